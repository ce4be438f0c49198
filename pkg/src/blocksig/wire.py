"""Binary container for signatures (".mlss" files).

Layout, all integers unsigned big-endian:

    magic "MLSS" (4) | version (1) | hash_alg (1) | sig_alg (1) |
    reserved 0 (1) | d (4) | n (4) | t (4) | h_out bytes (2) |
    t+1 digests (T_1..T_t, h_star) | len(sigma_prime) (4) | sigma_prime

Total length is always 22 + (t+1)*h_out + 4 + len(sigma_prime).
"""

from __future__ import annotations

import struct

from .hashing import ALGORITHMS as HASH_ALGORITHMS
from .scheme import MlssSignature
from .signing import SIG_ED25519, SIG_STUB

MAGIC = b"MLSS"
VERSION = 1
HEADER = struct.Struct(">4sBBBBIIIH")
HEADER_LEN = HEADER.size  # 22

_SIG_ALGS = {SIG_STUB, SIG_ED25519}


class WireError(ValueError):
    pass


class BadMagicError(WireError):
    pass


class BadVersionError(WireError):
    pass


class UnknownAlgorithmError(WireError):
    pass


class TruncatedError(WireError):
    pass


class TrailingBytesError(WireError):
    pass


def encode_signature(sig: MlssSignature) -> bytes:
    for value, width in ((sig.d, 32), (sig.n, 32), (sig.t, 32),
                         (sig.h_out, 16), (len(sig.sigma_prime), 32)):
        if not 0 <= value < (1 << width):
            raise WireError(f"field value {value} overflows {width} bits")
    parts = [HEADER.pack(MAGIC, VERSION, sig.hash_alg, sig.sig_alg, 0,
                         sig.d, sig.n, sig.t, sig.h_out)]
    parts.extend(sig.tests)
    parts.append(sig.h_star)
    parts.append(struct.pack(">I", len(sig.sigma_prime)))
    parts.append(sig.sigma_prime)
    return b"".join(parts)


def decode_signature(data: bytes) -> MlssSignature:
    if len(data) < HEADER_LEN:
        raise TruncatedError("container shorter than header")
    magic, version, hash_alg, sig_alg, reserved, d, n, t, h_out = \
        HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}")
    if version != VERSION:
        raise BadVersionError(f"unsupported version {version}")
    if hash_alg not in HASH_ALGORITHMS:
        raise UnknownAlgorithmError(f"unknown hash algorithm id {hash_alg}")
    if sig_alg not in _SIG_ALGS:
        raise UnknownAlgorithmError(f"unknown signature algorithm id {sig_alg}")
    _, expected_h_out = HASH_ALGORITHMS[hash_alg]
    if h_out != expected_h_out:
        raise WireError(f"h_out {h_out} does not match hash algorithm")

    pos = HEADER_LEN
    digests = []
    for _ in range(t + 1):
        if pos + h_out > len(data):
            raise TruncatedError("truncated digest area")
        digests.append(data[pos:pos + h_out])
        pos += h_out
    if pos + 4 > len(data):
        raise TruncatedError("truncated signature length")
    (sig_len,) = struct.unpack_from(">I", data, pos)
    pos += 4
    if pos + sig_len > len(data):
        raise TruncatedError("truncated base signature")
    sigma_prime = data[pos:pos + sig_len]
    pos += sig_len
    if pos != len(data):
        raise TrailingBytesError(f"{len(data) - pos} trailing bytes")
    return MlssSignature(d, n, hash_alg, sig_alg,
                         tuple(digests[:-1]), digests[-1], sigma_prime)
