"""The signature scheme: gen / sign / verify with block-level
modification localization.

Sign hashes every block, folds the block hashes into t group-test
digests dictated by the cover-free matrix for (d, n), hashes the whole
document into h_star, and base-signs the hash of the serialized test
vector.  Verify checks the base signature first, then the whole-document
hash, and only when asked to locate (lc=true) rebuilds the matrix and
decodes the failing tests into block indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import grouptest
from .blocks import BlockView
from .cff import build
from .hashing import HashBackend
from .signing import backend_for


class SchemeError(ValueError):
    pass


class OutcomeKind(Enum):
    INVALID_SIGNATURE = "invalid-signature"
    VALID = "valid"
    MODIFIED_UNLOCATED = "modified"
    MODIFIED_LOCATED = "modified-located"
    STRUCTURAL_ERROR = "structural-error"


@dataclass(frozen=True)
class VerifyOutcome:
    kind: OutcomeKind
    modified: tuple[int, ...] = ()
    over_threshold: bool = False
    detail: str = ""


@dataclass
class MlssSignature:
    """The signature tuple: t test digests, the whole-document digest
    h_star, and the base signature sigma_prime over their serialization."""

    d: int
    n: int
    hash_alg: int
    sig_alg: int
    tests: tuple[bytes, ...]
    h_star: bytes
    sigma_prime: bytes

    @property
    def t(self) -> int:
        return len(self.tests)

    @property
    def h_out(self) -> int:
        return len(self.h_star)

    def serialized_tests(self) -> bytes:
        """T_1 || ... || T_t || h_star; unambiguous since every digest
        has the same fixed length."""
        return b"".join(self.tests) + self.h_star


def gen(sig_backend, k: int = 128, seed: bytes = b"") -> tuple[bytes, bytes]:
    """Key generation is a plain call into the base backend."""
    return sig_backend.gen(k, seed)


def sign(secret_key: bytes, document: bytes, view: BlockView, d: int,
         hash_backend: HashBackend, sig_backend) -> MlssSignature:
    if view.count < 2:
        raise SchemeError("need at least 2 blocks to sign")
    if len(document) != view.total:
        raise SchemeError("document length does not match block view")
    matrix = build(d, view.count)
    block_hashes = [hash_backend.hash(b) for b in view.slices(document)]
    tests = grouptest.form_tests(matrix, block_hashes, hash_backend)
    h_star = hash_backend.hash(document)
    sig = MlssSignature(d, view.count, hash_backend.alg_id,
                        sig_backend.alg_id, tests, h_star, b"")
    digest = hash_backend.hash(sig.serialized_tests())
    sig.sigma_prime = sig_backend.sign(secret_key, digest)
    return sig


def verify(public_key: bytes, sig: MlssSignature, document: bytes,
           view: BlockView, lc: bool, hash_backend: HashBackend,
           sig_backend=None) -> VerifyOutcome:
    if sig_backend is None:
        sig_backend = backend_for(sig.sig_alg)
    if hash_backend.alg_id != sig.hash_alg:
        raise SchemeError("hash backend does not match signature")
    if view.count != sig.n or len(document) != view.total:
        return VerifyOutcome(
            OutcomeKind.STRUCTURAL_ERROR,
            detail=f"signature covers {sig.n} blocks, "
                   f"document view has {view.count}")

    digest = hash_backend.hash(sig.serialized_tests())
    if not sig_backend.verify(public_key, digest, sig.sigma_prime):
        return VerifyOutcome(OutcomeKind.INVALID_SIGNATURE)

    if hash_backend.hash(document) == sig.h_star:
        return VerifyOutcome(OutcomeKind.VALID)

    if not lc:
        return VerifyOutcome(OutcomeKind.MODIFIED_UNLOCATED)

    matrix = build(sig.d, sig.n)
    if matrix.t != sig.t:
        return VerifyOutcome(
            OutcomeKind.STRUCTURAL_ERROR,
            detail=f"signature has {sig.t} tests, matrix for "
                   f"(d={sig.d}, n={sig.n}) has {matrix.t}")
    block_hashes = [hash_backend.hash(b) for b in view.slices(document)]
    recomputed = grouptest.form_tests(matrix, block_hashes, hash_backend)
    failing = {i for i, (a, b) in enumerate(zip(sig.tests, recomputed))
               if a != b}
    located = grouptest.decode(matrix, failing)
    return VerifyOutcome(OutcomeKind.MODIFIED_LOCATED,
                         modified=tuple(located),
                         over_threshold=len(located) > sig.d)
