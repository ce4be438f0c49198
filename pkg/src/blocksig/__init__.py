"""blocksig: digital signatures that locate modified blocks.

Sign a document divided into n blocks so that a verifier can detect
tampering and identify exactly which blocks changed, up to a threshold
d, using cover-free families and nonadaptive group testing.
"""

from .blocks import (
    BlockView,
    BlockViewError,
    ManifestError,
    parse_manifest,
    serialize_manifest,
    split_delimiter,
    split_fixed,
)
from .cff import (
    CffMatrix,
    CffPlan,
    Construction,
    build,
    build_ks_rs,
    build_pr_greedy,
    build_sperner,
    canonical_bytes,
    canonical_digest,
    plan,
    verify_cff,
)
from .grouptest import decode, form_tests
from .hashing import HashBackend
from .scheme import MlssSignature, OutcomeKind, VerifyOutcome, gen, sign, verify
from .signing import Ed25519Backend, StubBackend, backend_for, read_key, write_key
from .wire import decode_signature, encode_signature

__version__ = "0.1.0"

__all__ = [
    "BlockView", "BlockViewError", "ManifestError", "parse_manifest",
    "serialize_manifest", "split_delimiter", "split_fixed",
    "CffMatrix", "CffPlan", "Construction", "build", "build_ks_rs",
    "build_pr_greedy", "build_sperner", "canonical_bytes",
    "canonical_digest", "plan", "verify_cff",
    "decode", "form_tests",
    "HashBackend",
    "MlssSignature", "OutcomeKind", "VerifyOutcome", "gen", "sign", "verify",
    "Ed25519Backend", "StubBackend", "backend_for", "read_key", "write_key",
    "decode_signature", "encode_signature",
]
