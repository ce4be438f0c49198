"""Group-testing layer: form test digests from block hashes and decode
failing tests back into the set of modified block indices."""

from __future__ import annotations

from typing import Iterable, Sequence

from .cff import CffMatrix
from .hashing import HashBackend


class GroupTestError(ValueError):
    pass


def form_tests(matrix: CffMatrix, block_hashes: Sequence[bytes],
               backend: HashBackend) -> tuple[bytes, ...]:
    """One digest per matrix row: the hash of the block hashes selected
    by that row, concatenated in ascending column order."""
    if len(block_hashes) != matrix.n:
        raise GroupTestError(
            f"expected {matrix.n} block hashes, got {len(block_hashes)}")
    h_out = backend.h_out
    for h in block_hashes:
        if len(h) != h_out:
            raise GroupTestError("block hash length does not match backend")
    return tuple(
        backend.hash(b"".join(block_hashes[j] for j in row))
        for row in matrix.rows
    )


def decode(matrix: CffMatrix, failing: Iterable[int]) -> list[int]:
    """Start from all columns and eliminate every column that appears in
    a passing test; what survives is the modified set (sorted).

    Exact when at most d blocks were modified; a superset containing all
    modified blocks otherwise.
    """
    failing = set(failing)
    for i in failing:
        if not 0 <= i < matrix.t:
            raise GroupTestError(f"test index {i} out of range [0, {matrix.t})")
    suspects = set(range(matrix.n))
    for i, row in enumerate(matrix.rows):
        if i not in failing:
            suspects.difference_update(row)
    return sorted(suspects)
