"""Base signature backends and opaque key-file handling.

Two backends: a deterministic keyed stub (HMAC-SHA256, shared key) for
reproducible fixtures, and Ed25519 from the `cryptography` provider.
Both sign the already-hashed message digest; the document/test hashing
above them is done by the instrumented hash backend so that byte
accounting stays exact.
"""

from __future__ import annotations

import hashlib
import hmac
import os
from pathlib import Path

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric.ed25519 import (
    Ed25519PrivateKey,
    Ed25519PublicKey,
)

SIG_STUB = 1
SIG_ED25519 = 2


class UnknownSignatureAlgorithm(ValueError):
    pass


class KeyFileError(ValueError):
    pass


class StubBackend:
    """Deterministic keyed test stub: gen derives both 'keys' from the
    seed, sign is HMAC-SHA256.  Not a real signature scheme."""

    alg_id = SIG_STUB
    name = "stub"

    def gen(self, k: int = 128, seed: bytes = b"") -> tuple[bytes, bytes]:
        key = hashlib.sha256(b"blocksig-stub" + k.to_bytes(4, "big") + seed).digest()
        return key, key

    def sign(self, secret_key: bytes, digest: bytes) -> bytes:
        return hmac.new(secret_key, digest, "sha256").digest()

    def verify(self, public_key: bytes, digest: bytes, signature: bytes) -> bool:
        return hmac.compare_digest(self.sign(public_key, digest), signature)


class Ed25519Backend:
    """Ed25519 over raw 32-byte keys."""

    alg_id = SIG_ED25519
    name = "ed25519"

    def gen(self, k: int = 128, seed: bytes = b"") -> tuple[bytes, bytes]:
        if seed:
            private = Ed25519PrivateKey.from_private_bytes(
                hashlib.sha256(b"blocksig-ed25519" + seed).digest())
        else:
            private = Ed25519PrivateKey.generate()
        return (private.private_bytes_raw(),
                private.public_key().public_bytes_raw())

    def sign(self, secret_key: bytes, digest: bytes) -> bytes:
        return Ed25519PrivateKey.from_private_bytes(secret_key).sign(digest)

    def verify(self, public_key: bytes, digest: bytes, signature: bytes) -> bool:
        try:
            Ed25519PublicKey.from_public_bytes(public_key).verify(signature, digest)
            return True
        except InvalidSignature:
            return False


_BACKENDS = {
    SIG_STUB: StubBackend(),
    SIG_ED25519: Ed25519Backend(),
}
_BY_NAME = {b.name: b for b in _BACKENDS.values()}


def backend_for(alg_id: int):
    if alg_id not in _BACKENDS:
        raise UnknownSignatureAlgorithm(f"unknown signature algorithm id {alg_id}")
    return _BACKENDS[alg_id]


def backend_by_name(name: str):
    if name not in _BY_NAME:
        raise UnknownSignatureAlgorithm(f"unknown signature algorithm {name!r}")
    return _BY_NAME[name]


# Key files are opaque blobs with a 1-byte algorithm-id prefix.

def write_key(path, alg_id: int, key: bytes) -> None:
    Path(path).write_bytes(bytes([alg_id]) + key)


def read_key(path) -> tuple[int, bytes]:
    data = Path(path).read_bytes()
    if len(data) < 2:
        raise KeyFileError(f"key file {path} is too short")
    alg_id = data[0]
    if alg_id not in _BACKENDS:
        raise KeyFileError(f"key file {path} has unknown algorithm id {alg_id}")
    return alg_id, data[1:]
