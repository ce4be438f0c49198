import random

import pytest

from blocksig.hashing import HashBackend
from blocksig.signing import StubBackend


@pytest.fixture
def stub_backend():
    return StubBackend()


@pytest.fixture
def stub_keys(stub_backend):
    return stub_backend.gen(seed=b"fixture")


@pytest.fixture
def hash_backend():
    return HashBackend()


def make_document(n_blocks: int, block_size: int, seed: int = 42) -> bytes:
    return random.Random(seed).randbytes(n_blocks * block_size)


def tamper(document: bytes, view, block_indices) -> bytes:
    """Flip one byte in each of the given blocks."""
    out = bytearray(document)
    for j in block_indices:
        offset, length = view.spans[j]
        assert length > 0
        out[offset] ^= 0xFF
    return bytes(out)
