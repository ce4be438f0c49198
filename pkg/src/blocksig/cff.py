"""Cover-free family (CFF) construction, planning and verification.

A d-CFF is a t x n binary matrix in which no column is covered by the
union of any d other columns.  Rows are the group tests, columns are the
document blocks.  Everything here is deterministic: signer and verifier
rebuild the exact same matrix from (d, n) alone.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass, field
from enum import IntEnum
from itertools import combinations
from math import comb
from typing import Iterator


class Construction(IntEnum):
    SPERNER = 0
    KS_RS = 1
    PR_GREEDY = 2
    IDENTITY = 3


class CffError(ValueError):
    pass


@dataclass(frozen=True)
class CffPlan:
    """Formula-level choice of construction and its (t, w) estimates."""

    construction: Construction
    d: int
    n: int
    t_formula: int
    w_formula: int


@dataclass
class CffMatrix:
    """Sparse t x n binary matrix: rows hold the sorted 1-column indices."""

    d: int
    n: int
    t: int
    rows: tuple[tuple[int, ...], ...]
    construction: Construction
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.t != len(self.rows):
            raise CffError("row count does not match t")
        covered = set()
        for row in self.rows:
            for j in row:
                if not 0 <= j < self.n:
                    raise CffError(f"column index {j} out of range [0, {self.n})")
            if list(row) != sorted(set(row)):
                raise CffError("row indices must be sorted and unique")
            covered.update(row)
        if len(covered) != self.n:
            raise CffError("every column must appear in at least one row")

    @property
    def weight(self) -> int:
        return sum(len(row) for row in self.rows)

    def column_masks(self) -> list[int]:
        """Per-column bitmask of the rows containing a 1."""
        masks = [0] * self.n
        for i, row in enumerate(self.rows):
            bit = 1 << i
            for j in row:
                masks[j] |= bit
        return masks


# ---------------------------------------------------------------------------
# planning
# ---------------------------------------------------------------------------

def sperner_rows(n: int) -> int:
    """Smallest s with C(s, floor(s/2)) >= n."""
    s = 1
    while comb(s, s // 2) < n:
        s += 1
    return s


def plan(d: int, n: int) -> CffPlan:
    """Pick the construction with the smallest formula t (ties: smallest w).

    For d = 1 this is always the Sperner family.  For d >= 2 the
    candidates are the (d+1)^2 ln n greedy-code bound, the (d+1) sqrt(n)
    Reed-Solomon bound and the identity matrix; flooring every
    real-valued formula.
    """
    if d < 1:
        raise CffError("d must be >= 1")
    if n < 2:
        raise CffError("n must be >= 2")
    if d == 1:
        t = sperner_rows(n)
        return CffPlan(Construction.SPERNER, d, n, t, n * t // 2)
    ln_n = math.log(n)
    candidates = [
        (math.floor((d + 1) ** 2 * ln_n),
         math.floor((d + 1) * n * ln_n / 2),
         Construction.PR_GREEDY),
        (math.floor((d + 1) * math.sqrt(n)),
         n * (d + 1),
         Construction.KS_RS),
        (n, n, Construction.IDENTITY),
    ]
    t, w, construction = min(candidates, key=lambda c: (c[0], c[1]))
    return CffPlan(construction, d, n, t, w)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def _next_prime(m: int) -> int:
    """Smallest prime >= m."""
    def is_prime(x: int) -> bool:
        if x < 2:
            return False
        for p in range(2, math.isqrt(x) + 1):
            if x % p == 0:
                return False
        return True

    while not is_prime(m):
        m += 1
    return m


def build_identity(n: int, d: int) -> CffMatrix:
    rows = tuple((j,) for j in range(n))
    return CffMatrix(d, n, n, rows, Construction.IDENTITY)


def build_sperner(n: int) -> CffMatrix:
    """1-CFF: columns are the first n floor(t/2)-subsets of t rows, in
    lexicographic order of their sorted index lists."""
    if n < 2:
        raise CffError("n must be >= 2")
    t = sperner_rows(n)
    k = t // 2
    rows: list[list[int]] = [[] for _ in range(t)]
    for j, subset in enumerate(combinations(range(t), k)):
        if j == n:
            break
        for i in subset:
            rows[i].append(j)
    return CffMatrix(1, n, t, tuple(tuple(r) for r in rows),
                     Construction.SPERNER, {"k": k})


def build_ks_rs(d: int, n: int) -> CffMatrix:
    """Kautz-Singleton matrix from degree-1 polynomials over GF(q).

    Column j encodes the polynomial p(x) = a*x + b with (a, b) =
    divmod(j, q), evaluated at x = 0..d.  Two distinct columns agree in
    at most one of the d+1 row blocks, so the matrix is a d-CFF with
    t = (d+1)*q.
    """
    if d < 2:
        raise CffError("build_ks_rs requires d >= 2")
    if n < 2:
        raise CffError("n must be >= 2")
    q = _next_prime(max(math.isqrt(n - 1) + 1, d + 1))
    if n > q * q:
        raise CffError(f"q={q} too small for n={n}")
    t = (d + 1) * q
    rows: list[list[int]] = [[] for _ in range(t)]
    for j in range(n):
        a, b = divmod(j, q)
        for i in range(d + 1):
            rows[i * q + (a * i + b) % q].append(j)
    return CffMatrix(d, n, t, tuple(tuple(r) for r in rows),
                     Construction.KS_RS, {"q": q, "L": d + 1})


def _binomial_tail_numerators(max_r: int, q: int) -> list[list[int]]:
    """tails[r][k] = Pr[Binomial(r, 1/q) >= k] * q**r, as exact integers."""
    tails = []
    for r in range(max_r + 1):
        pmf = [comb(r, j) * (q - 1) ** (r - j) for j in range(r + 1)]
        tail = [0] * (r + 2)
        for j in range(r, -1, -1):
            tail[j] = tail[j + 1] + pmf[j]
        tails.append(tail)
    return tails


def pr_code_params(d: int, n: int) -> tuple[int, int, int]:
    """(q, L, a) for the derandomized greedy code.

    q is the smallest prime >= 2(d+1); L is the smallest length for
    which the expected number of codeword pairs agreeing in more than
    a = floor((L-1)/d) positions is below 1 over a uniform random code.
    """
    q = _next_prime(2 * (d + 1))
    pairs = comb(n, 2)
    L = 1
    while True:
        a = (L - 1) // d
        tails = _binomial_tail_numerators(L, q)
        if pairs * tails[L][a + 1] < q ** L:
            return q, L, a
        L += 1
        if L > 10_000:
            raise CffError("greedy code length search diverged")


def build_pr_greedy(d: int, n: int) -> CffMatrix:
    """d-CFF via the method of conditional expectations.

    Codewords over GF(q) are fixed one symbol at a time; each symbol is
    the smallest one minimizing the exact expected number of pairs whose
    final agreement would exceed a = floor((L-1)/d), with the undecided
    symbols treated as uniform i.i.d.  The q-row identity mapping per
    code position then yields a t = q*L binary d-CFF.
    """
    if d < 2:
        raise CffError("build_pr_greedy requires d >= 2")
    if n < 2:
        raise CffError("n must be >= 2")
    q, L, a = pr_code_params(d, n)
    tails = _binomial_tail_numerators(L, q)

    def tail_ge(r: int, k: int) -> int:
        # Pr[Binomial(r, 1/q) >= k] scaled by q**r
        if k <= 0:
            return q ** r
        if k > r:
            return 0
        return tails[r][k]

    code: list[list[int]] = []
    for _ in range(n):
        agree = [0] * len(code)
        word: list[int] = []
        for pos in range(L):
            remaining = L - pos - 1
            best_sym = 0
            best_phi = None
            for sym in range(q):
                phi = 0
                for u, prev in enumerate(code):
                    s = agree[u] + (1 if prev[pos] == sym else 0)
                    phi += tail_ge(remaining, a + 1 - s)
                if best_phi is None or phi < best_phi:
                    best_sym, best_phi = sym, phi
            word.append(best_sym)
            for u, prev in enumerate(code):
                if prev[pos] == best_sym:
                    agree[u] += 1
        code.append(word)

    for u in range(n):
        for v in range(u + 1, n):
            agreement = sum(1 for p in range(L) if code[u][p] == code[v][p])
            if agreement > a:
                raise CffError("derandomization invariant violated")

    rows: list[list[int]] = [[] for _ in range(q * L)]
    for j, word in enumerate(code):
        for pos, sym in enumerate(word):
            rows[pos * q + sym].append(j)
    return CffMatrix(d, n, q * L, tuple(tuple(r) for r in rows),
                     Construction.PR_GREEDY,
                     {"q": q, "L": L, "max_agreement": a})


def build(d: int, n: int) -> CffMatrix:
    """Deterministic d-CFF for (d, n), following plan()'s choice.

    The greedy-code construction carries a constant-factor overhead over
    its formula t, so when its realized t = q*L is no better than the
    Reed-Solomon matrix (or the identity), the smaller alternative is
    built instead.
    """
    p = plan(d, n)
    if p.construction is Construction.SPERNER:
        return build_sperner(n)
    if p.construction is Construction.IDENTITY:
        return build_identity(n, d)
    if p.construction is Construction.KS_RS:
        return build_ks_rs(d, n)
    q, L, _ = pr_code_params(d, n)
    ks = build_ks_rs(d, n)
    if q * L >= min(ks.t, n):
        if n <= ks.t:
            return build_identity(n, d)
        return ks
    return build_pr_greedy(d, n)


# ---------------------------------------------------------------------------
# verification and canonical encoding
# ---------------------------------------------------------------------------

def verify_cff(matrix: CffMatrix, d: int) -> bool:
    """Brute-force check of the cover-free property.

    For every column set C of size min(d, n-1) and every column c not in
    C, some row must have a 1 at c and 0s across C.  Cost grows like
    C(n, d) * n, so this is an oracle for small instances only.
    """
    n = matrix.n
    masks = matrix.column_masks()
    full = (1 << matrix.t) - 1
    size = min(d, n - 1)
    for cols in combinations(range(n), size):
        union = 0
        for j in cols:
            union |= masks[j]
        uncovered = full ^ union
        for c, mask in enumerate(masks):
            if mask & uncovered == 0 and c not in cols:
                return False
    return True


def canonical_bytes(matrix: CffMatrix) -> bytes:
    """Canonical row-major encoding: "CFF1", then d, n, t,
    construction id, then each row as its size followed by its sorted
    column indices, all unsigned 32-bit big-endian."""
    out = [b"CFF1", struct.pack(">IIII", matrix.d, matrix.n, matrix.t,
                                int(matrix.construction))]
    for row in matrix.rows:
        out.append(struct.pack(f">I{len(row)}I", len(row), *row))
    return b"".join(out)


def canonical_digest(matrix: CffMatrix) -> str:
    """SHA-256 hex digest of the canonical encoding; equal digests mean
    equal matrices."""
    return hashlib.sha256(canonical_bytes(matrix)).hexdigest()
