"""Linear algebra over Z/2 with vectors stored as Python int bitmasks.

Bit ``i`` of a vector is its ``(i+1)``-th coordinate, so ``e_1 == 1``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def basis_vector(i: int) -> int:
    """The standard basis vector e_i (1-based)."""
    return 1 << (i - 1)


def echelon(vectors: Iterable[int]) -> dict[int, int]:
    """Reduced echelon basis of the span, keyed by pivot (highest) bit."""
    basis: dict[int, int] = {}
    for v in vectors:
        v = reduce(v, basis)
        if v:
            pivot = v.bit_length() - 1
            # keep the basis fully reduced
            for p, b in list(basis.items()):
                if (b >> pivot) & 1:
                    basis[p] = b ^ v
            basis[pivot] = v
    return basis


def reduce(v: int, basis: dict[int, int]) -> int:
    """Canonical representative of ``v`` modulo the span of an echelon basis."""
    for pivot in sorted(basis, reverse=True):
        if (v >> pivot) & 1:
            v ^= basis[pivot]
    return v


def rank(vectors: Iterable[int]) -> int:
    return len(echelon(vectors))


def independent(vectors: Sequence[int]) -> bool:
    return rank(vectors) == len(vectors)


def dot(u: int, v: int) -> int:
    return popcount(u & v) & 1


def solve(rows: Sequence[int], rhs: Sequence[int]) -> int | None:
    """Find ``x`` with ``dot(rows[k], x) == rhs[k]`` for all k, or None."""
    # augmented equations: coefficient mask plus a high flag bit for the rhs
    width = max((r.bit_length() for r in rows), default=0)
    flag = 1 << width
    pivots: dict[int, int] = {}
    for r, b in zip(rows, rhs):
        eq = r | (flag if b else 0)
        for p in sorted(pivots, reverse=True):
            if (eq >> p) & 1:
                eq ^= pivots[p]
        coeff = eq & (flag - 1)
        if not coeff:
            if eq:
                return None
            continue
        p = coeff.bit_length() - 1
        for q, e in list(pivots.items()):
            if (e >> p) & 1:
                pivots[q] = e ^ eq
        pivots[p] = eq
    x = 0
    for p, eq in pivots.items():
        if eq & flag:
            x |= 1 << p
    return x


def apply_matrix(columns: Sequence[int], v: int) -> int:
    """Image of ``v`` under the linear map whose i-th column is ``columns[i]``."""
    out = 0
    for i in bits(v):
        out ^= columns[i]
    return out


def to_bits(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def from_bits(seq: Iterable[int]) -> int:
    v = 0
    for i, b in enumerate(seq):
        if int(b) % 2:
            v |= 1 << i
    return v
