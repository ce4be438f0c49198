"""Hash backends with exact input-byte accounting."""

from __future__ import annotations

import hashlib

SHA256 = 1
SHA512 = 2

ALGORITHMS = {
    SHA256: ("sha256", 32),
    SHA512: ("sha512", 64),
}
_BY_NAME = {name: alg_id for alg_id, (name, _) in ALGORITHMS.items()}


class UnknownHashAlgorithm(ValueError):
    pass


class HashBackend:
    """Wraps a hashlib algorithm and counts every input byte.

    The counter increases by exactly the input length per call, which is
    what the cost-accounting checks compare against the predicted
    totals.  One instance with an active counter serves one operation at
    a time; use independent instances across threads.
    """

    def __init__(self, alg_id: int = SHA256):
        if alg_id not in ALGORITHMS:
            raise UnknownHashAlgorithm(f"unknown hash algorithm id {alg_id}")
        self.alg_id = alg_id
        self.name, self.h_out = ALGORITHMS[alg_id]
        self.bytes_hashed = 0

    @classmethod
    def by_name(cls, name: str) -> "HashBackend":
        if name not in _BY_NAME:
            raise UnknownHashAlgorithm(f"unknown hash algorithm {name!r}")
        return cls(_BY_NAME[name])

    def hash(self, data: bytes) -> bytes:
        self.bytes_hashed += len(data)
        return hashlib.new(self.name, data).digest()

    def reset_counter(self) -> None:
        self.bytes_hashed = 0
