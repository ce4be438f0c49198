"""Deterministic division of a document byte stream into blocks.

Three strategies: fixed-size blocks, delimiter-separated blocks (each
delimiter occurrence is attached to the end of the preceding block so
every byte belongs to exactly one block), and an explicit manifest of
(offset, length) pairs.  Sender and receiver must use the same strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class BlockViewError(ValueError):
    pass


class ManifestError(BlockViewError):
    pass


class ManifestOrderError(ManifestError):
    """Offsets not in ascending order."""


class ManifestOverlapError(ManifestError):
    """A block starts before the previous one ends."""


class ManifestGapError(ManifestError):
    """A block starts after the previous one ends."""


class ManifestLengthError(ManifestError):
    """Blocks do not add up to the declared total length."""


@dataclass(frozen=True)
class BlockView:
    """Contiguous, non-overlapping (offset, length) spans covering
    [0, total) exactly, in ascending offset order."""

    spans: tuple[tuple[int, int], ...]
    total: int

    def __post_init__(self):
        if not self.spans:
            raise BlockViewError("empty block view")
        end = 0
        for offset, length in self.spans:
            if length < 0:
                raise BlockViewError("negative block length")
            if offset < end:
                raise ManifestOverlapError(f"block at {offset} overlaps previous")
            if offset > end:
                raise ManifestGapError(f"gap before block at {offset}")
            end = offset + length
        if end != self.total:
            raise ManifestLengthError(
                f"blocks cover {end} bytes, declared total is {self.total}")

    @property
    def count(self) -> int:
        return len(self.spans)

    def slices(self, document: bytes) -> Iterator[bytes]:
        if len(document) != self.total:
            raise BlockViewError(
                f"document is {len(document)} bytes, view covers {self.total}")
        for offset, length in self.spans:
            yield document[offset:offset + length]


def split_fixed(total: int, size: int) -> BlockView:
    """ceil(total/size) blocks of `size` bytes, last one possibly shorter."""
    if size < 1:
        raise BlockViewError("block size must be >= 1")
    if total < 1:
        raise BlockViewError("cannot split an empty document")
    spans = []
    for offset in range(0, total, size):
        spans.append((offset, min(size, total - offset)))
    return BlockView(tuple(spans), total)


def split_delimiter(document: bytes, delimiter: bytes) -> BlockView:
    """Blocks end right after each delimiter occurrence; a trailing
    remainder forms a final block.  No occurrence means one block."""
    if not delimiter:
        raise BlockViewError("delimiter must be non-empty")
    if not document:
        raise BlockViewError("cannot split an empty document")
    spans = []
    start = 0
    pos = document.find(delimiter)
    while pos != -1:
        end = pos + len(delimiter)
        spans.append((start, end - start))
        start = end
        pos = document.find(delimiter, start)
    if start < len(document) or not spans:
        spans.append((start, len(document) - start))
    return BlockView(tuple(spans), len(document))


def parse_manifest(text: str) -> BlockView:
    """Manifest format: first line is the total document length, then
    one "offset length" line per block, decimal, ascending."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ManifestError("empty manifest")
    try:
        total = int(lines[0])
    except ValueError:
        raise ManifestError(f"bad total length line: {lines[0]!r}") from None
    spans = []
    prev_offset = 0
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ManifestError(f"bad manifest line: {line!r}")
        try:
            offset, length = int(parts[0]), int(parts[1])
        except ValueError:
            raise ManifestError(f"bad manifest line: {line!r}") from None
        if offset < prev_offset:
            raise ManifestOrderError(f"offsets not ascending at {offset}")
        prev_offset = offset
        spans.append((offset, length))
    if not spans:
        raise ManifestError("manifest declares no blocks")
    return BlockView(tuple(spans), total)


def serialize_manifest(view: BlockView) -> str:
    lines = [str(view.total)]
    lines.extend(f"{offset} {length}" for offset, length in view.spans)
    return "\n".join(lines) + "\n"
