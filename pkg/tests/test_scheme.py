import pytest

from blocksig import scheme
from blocksig.blocks import split_fixed
from blocksig.cff import build
from blocksig.hashing import HashBackend
from blocksig.scheme import OutcomeKind, SchemeError
from blocksig.signing import Ed25519Backend, StubBackend
from blocksig.wire import encode_signature

from conftest import make_document, tamper


def signed_fixture(d, n, block_size, backend=None, seed=42):
    backend = backend or StubBackend()
    document = make_document(n, block_size, seed)
    view = split_fixed(len(document), block_size)
    sk, pk = backend.gen(seed=b"fixture")
    sig = scheme.sign(sk, document, view, d, HashBackend(), backend)
    return document, view, sig, pk, backend


class TestGen:
    def test_stub_reproducible(self):
        b = StubBackend()
        assert scheme.gen(b, seed=b"s") == scheme.gen(b, seed=b"s")

    def test_ed25519_round_trip(self):
        b = Ed25519Backend()
        sk, pk = scheme.gen(b)
        sig = b.sign(sk, b"digest" * 4)
        assert b.verify(pk, b"digest" * 4, sig)
        assert not b.verify(pk, b"other digest" * 2, sig)

    def test_ed25519_keys_distinct(self):
        b = Ed25519Backend()
        assert scheme.gen(b) != scheme.gen(b)


class TestSign:
    def test_round_trip_valid(self):
        document, view, sig, pk, backend = signed_fixture(2, 16, 64)
        for lc in (False, True):
            outcome = scheme.verify(pk, sig, document, view, lc,
                                    HashBackend(), backend)
            assert outcome.kind is OutcomeKind.VALID

    def test_deterministic_with_stub(self):
        _, _, sig1, _, _ = signed_fixture(2, 16, 64)
        _, _, sig2, _, _ = signed_fixture(2, 16, 64)
        assert encode_signature(sig1) == encode_signature(sig2)

    def test_minimal_two_block_document(self):
        document, view, sig, pk, backend = signed_fixture(1, 2, 8192)
        assert sig.t == 2
        assert len(sig.tests) == 2

    def test_rejects_single_block(self):
        document = make_document(1, 64)
        view = split_fixed(len(document), 64)
        backend = StubBackend()
        sk, _ = backend.gen()
        with pytest.raises(SchemeError):
            scheme.sign(sk, document, view, 1, HashBackend(), backend)

    def test_sign_byte_accounting(self):
        n, block_size = 128, 8192
        document = make_document(n, block_size)
        view = split_fixed(len(document), block_size)
        backend = StubBackend()
        sk, _ = backend.gen()
        counter = HashBackend()
        scheme.sign(sk, document, view, 1, counter, backend)
        matrix = build(1, n)
        assert matrix.weight == 128 * 5  # t = 10 rows, even, so w = n*t/2
        expected = 2 * len(document) + \
            (matrix.weight + matrix.t + 1) * counter.h_out
        assert counter.bytes_hashed == expected


class TestVerify:
    def test_single_block_tamper_located(self):
        document, view, sig, pk, backend = signed_fixture(2, 16, 64)
        modified = tamper(document, view, [5])
        outcome = scheme.verify(pk, sig, modified, view, True,
                                HashBackend(), backend)
        assert outcome.kind is OutcomeKind.MODIFIED_LOCATED
        assert outcome.modified == (5,)
        assert not outcome.over_threshold

    def test_lc_false_reports_modified_only(self):
        document, view, sig, pk, backend = signed_fixture(2, 16, 64)
        modified = tamper(document, view, [5])
        counter = HashBackend()
        outcome = scheme.verify(pk, sig, modified, view, False, counter,
                                backend)
        assert outcome.kind is OutcomeKind.MODIFIED_UNLOCATED
        # fast path: only the test vector and the document were hashed,
        # so the matrix was never consulted
        assert counter.bytes_hashed == \
            len(document) + (sig.t + 1) * counter.h_out

    def test_corrupt_base_signature(self):
        document, view, sig, pk, backend = signed_fixture(2, 16, 64)
        sig.sigma_prime = bytes(b ^ 1 for b in sig.sigma_prime)
        modified = tamper(document, view, [3])
        for doc in (document, modified):
            outcome = scheme.verify(pk, sig, doc, view, True,
                                    HashBackend(), backend)
            assert outcome.kind is OutcomeKind.INVALID_SIGNATURE

    def test_over_threshold_superset(self):
        document, view, sig, pk, backend = signed_fixture(2, 16, 64)
        defects = [1, 6, 11]  # d + 1 modifications
        modified = tamper(document, view, defects)
        outcome = scheme.verify(pk, sig, modified, view, True,
                                HashBackend(), backend)
        assert outcome.kind is OutcomeKind.MODIFIED_LOCATED
        assert set(outcome.modified) >= set(defects)
        assert outcome.over_threshold == (len(outcome.modified) > 2)

    def test_block_count_mismatch_is_structural(self):
        document, view, sig, pk, backend = signed_fixture(2, 16, 64)
        other_view = split_fixed(len(document), 128)  # 8 blocks, not 16
        outcome = scheme.verify(pk, sig, document, other_view, True,
                                HashBackend(), backend)
        assert outcome.kind is OutcomeKind.STRUCTURAL_ERROR

    def test_ed25519_end_to_end(self):
        backend = Ed25519Backend()
        document, view, sig, pk, backend = signed_fixture(2, 16, 64, backend)
        outcome = scheme.verify(pk, sig, document, view, True,
                                HashBackend(), backend)
        assert outcome.kind is OutcomeKind.VALID
        modified = tamper(document, view, [7, 12])
        outcome = scheme.verify(pk, sig, modified, view, True,
                                HashBackend(), backend)
        assert outcome.modified == (7, 12)

    def test_hash_backend_mismatch(self):
        document, view, sig, pk, backend = signed_fixture(2, 16, 64)
        with pytest.raises(SchemeError):
            scheme.verify(pk, sig, document, view, True,
                          HashBackend.by_name("sha512"), backend)
