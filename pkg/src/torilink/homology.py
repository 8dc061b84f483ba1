"""Integral homology via Smith normal form, simplicial complexes, and the
Betti-number formula for small covers in terms of full subcomplexes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from . import gf2

# A sparse integer matrix: {row: {col: value}} with no zero values stored.
Sparse = dict


def to_sparse(A: Sequence[Sequence[int]]) -> Sparse:
    out: Sparse = {}
    for i, row in enumerate(A):
        entries = {j: int(v) for j, v in enumerate(row) if v}
        if entries:
            out[i] = entries
    return out


def _columns(M: Sparse) -> dict[int, set]:
    cols: dict[int, set] = {}
    for i, row in M.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    return cols


def _eliminate_units(M: Sparse) -> tuple[Sparse, int]:
    """Pivot away every +-1 entry reachable, cheapest (Markowitz) first.

    Returns the remaining matrix and the number of unit pivots removed; each
    removed pivot contributes an invariant factor 1.
    """
    M = {i: dict(r) for i, r in M.items()}
    cols = _columns(M)
    units = 0
    while True:
        best = None
        for i, row in M.items():
            for j, v in row.items():
                if v in (1, -1):
                    cost = (len(row) - 1) * (len(cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            return M, units
        _, pi, pj = best
        prow = M.pop(pi)
        pv = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols[pj]):
            row = M[i]
            factor = row[pj] * pv  # pv is its own inverse
            for j, v in prow.items():
                nv = row.get(j, 0) - factor * v
                if nv:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = nv
                elif j in row:
                    del row[j]
                    cols[j].discard(i)
            if not row:
                del M[i]
        del cols[pj]
        units += 1


def _dense_snf_diagonal(A: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries after classical Smith reduction (not yet a chain)."""
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                break
            # move a smaller remainder onto the pivot and retry
            best = None
            for i in range(t, m):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, t)
            for j in range(t, n):
                if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def _divisibility_chain(diag: list[int]) -> list[int]:
    d = sorted(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def smith_normal_form(A) -> tuple[tuple[int, ...], int]:
    """Invariant factors d_1 | d_2 | ... and the rank of an integer matrix.

    ``A`` may be a list of rows or a sparse ``{row: {col: value}}`` dict.
    """
    M = A if isinstance(A, dict) else to_sparse(A)
    rest, units = _eliminate_units(M)
    factors = [1] * units
    if rest:
        rows = sorted(rest)
        cols = sorted({j for r in rest.values() for j in r})
        cidx = {j: k for k, j in enumerate(cols)}
        dense = [[0] * len(cols) for _ in rows]
        for a, i in enumerate(rows):
            for j, v in rest[i].items():
                dense[a][cidx[j]] = v
        factors += _dense_snf_diagonal(dense)
    factors = _divisibility_chain(factors)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0
    return tuple(factors), len(factors)


def rational_rank(A: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-exact Gaussian elimination (independent of the SNF code)."""
    rows = [[Fraction(v) for v in r] for r in A]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


# -- chain complexes ------------------------------------------------------------


@dataclass
class HomologySummary:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def __str__(self):
        parts = []
        for k, (b, t) in enumerate(zip(self.betti, self.torsion)):
            s = f"H{k}: Z^{b}" if b else f"H{k}: 0"
            if t:
                s += " + " + " + ".join(f"Z/{d}" for d in t)
            parts.append(s)
        return "\n".join(parts)


class ChainComplex:
    """Cell counts per dimension plus sparse boundary matrices.

    ``boundaries[k]`` maps k-cells to (k-1)-cells as ``{(k-1)-cell: {k-cell: coeff}}``.
    """

    def __init__(self, counts: Sequence[int], boundaries: Mapping[int, Sparse], check=True):
        self.counts = tuple(counts)
        self.boundaries = {k: v for k, v in boundaries.items()}
        if check:
            self.check()

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def matrix(self, k: int) -> Sparse:
        return self.boundaries.get(k, {})

    def check(self):
        for k in range(2, self.dim + 1):
            A, B = self.matrix(k - 1), self.matrix(k)
            # (A B)[i][j] = sum_l A[i][l] B[l][j]
            for i, arow in A.items():
                acc: dict[int, int] = {}
                for l, a in arow.items():
                    for j, b in B.get(l, {}).items():
                        acc[j] = acc.get(j, 0) + a * b
                if any(acc.values()):
                    raise ValueError(f"boundary of boundary is nonzero in degree {k}")

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts))


def homology(C: ChainComplex) -> HomologySummary:
    snf = {k: smith_normal_form(C.matrix(k)) for k in range(1, C.dim + 1)}
    betti, torsion = [], []
    for k in range(C.dim + 1):
        rk = snf[k][1] if k in snf else 0
        rk1 = snf[k + 1][1] if k + 1 in snf else 0
        betti.append(C.counts[k] - rk - rk1)
        tors = tuple(d for d in snf[k + 1][0] if d > 1) if k + 1 in snf else ()
        torsion.append(tors)
    return HomologySummary(tuple(betti), tuple(torsion))


def orient_regular_cells(dims: Sequence[int], below: Sequence[Sequence[int]]) -> dict[int, Sparse]:
    """Incidence numbers for a regular CW complex given only its face poset.

    Edges get +1/-1 at their two ends; for higher cells signs propagate across
    the diamonds [c:b][b:d] + [c:b'][b':d] = 0.
    """
    cells_by_dim: dict[int, list[int]] = {}
    for c, d in enumerate(dims):
        cells_by_dim.setdefault(d, []).append(c)
    index = {}
    for d, cs in cells_by_dim.items():
        for k, c in enumerate(cs):
            index[c] = k
    sign: dict[tuple[int, int], int] = {}
    top = max(dims) if dims else 0
    for d in range(1, top + 1):
        for c in cells_by_dim.get(d, []):
            faces = list(below[c])
            if d == 1:
                if len(faces) != 2:
                    raise ValueError(f"edge {c} does not have two distinct endpoints")
                sign[c, faces[0]] = -1
                sign[c, faces[1]] = 1
                continue
            # each codim-2 face of c lies in exactly two facets of c
            holders: dict[int, list[int]] = {}
            for b in faces:
                for e in below[b]:
                    holders.setdefault(e, []).append(b)
            nbrs: dict[int, list[tuple[int, int]]] = {b: [] for b in faces}
            for e, bs in holders.items():
                if len(bs) != 2:
                    raise ValueError(f"cell {c} is not regular around {e}")
                b1, b2 = bs
                nbrs[b1].append((b2, e))
                nbrs[b2].append((b1, e))
            sign[c, faces[0]] = 1
            stack = [faces[0]]
            while stack:
                b = stack.pop()
                for b2, e in nbrs[b]:
                    want = -sign[c, b] * sign[b, e] * sign[b2, e]
                    if (c, b2) in sign:
                        if sign[c, b2] != want:
                            raise ValueError(f"cell {c} is not orientable as a regular cell")
                    else:
                        sign[c, b2] = want
                        stack.append(b2)
            if any((c, b) not in sign for b in faces):
                raise ValueError(f"boundary of cell {c} is disconnected")
    mats: dict[int, Sparse] = {}
    for (c, b), s in sign.items():
        mats.setdefault(dims[c], {}).setdefault(index[b], {})[index[c]] = s
    return mats


def chain_complex_from_poset(dims: Sequence[int], below: Sequence[Sequence[int]]) -> ChainComplex:
    top = max(dims) if dims else -1
    counts = [0] * (top + 1)
    for d in dims:
        counts[d] += 1
    return ChainComplex(counts, orient_regular_cells(dims, below))


# -- simplicial complexes --------------------------------------------------------


class SimplicialComplex:
    """A simplicial complex stored by its maximal simplices."""

    def __init__(self, simplices: Iterable[Iterable] = (), vertices: Iterable = ()):
        sets = {frozenset(s) for s in simplices}
        sets.discard(frozenset())
        maximal = [s for s in sets if not any(s < t for t in sets)]
        self.maximal = sorted(maximal, key=lambda s: (len(s), sorted(map(str, s))))
        vs = set(vertices)
        for s in self.maximal:
            vs |= s
        for v in vs:
            if not any(v in s for s in self.maximal):
                self.maximal.append(frozenset([v]))
        self.vertex_set = frozenset(vs)

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.maximal), default=0) - 1

    def is_empty(self) -> bool:
        return not self.vertex_set

    def faces(self, k: int) -> list[frozenset]:
        out = set()
        for s in self.maximal:
            if len(s) >= k + 1:
                for sub in itertools.combinations(sorted(s, key=str), k + 1):
                    out.add(frozenset(sub))
        return sorted(out, key=lambda f: sorted(map(str, f)))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def full_subcomplex(self, vertices: Iterable) -> "SimplicialComplex":
        vs = frozenset(vertices) & self.vertex_set
        return SimplicialComplex((s & vs for s in self.maximal if s & vs), vertices=vs)

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        if self.vertex_set & other.vertex_set:
            raise ValueError("join needs disjoint vertex sets")
        a = self.maximal or [frozenset()]
        b = other.maximal or [frozenset()]
        return SimplicialComplex(s | t for s in a for t in b)

    def chain_complex(self, augmented: bool = False) -> ChainComplex:
        """Simplicial chains; with ``augmented`` the empty simplex sits in degree 0
        and degree k holds the (k-1)-simplices."""
        faces = [self.faces(k) for k in range(self.dim + 1)]
        index = [{f: i for i, f in enumerate(fs)} for fs in faces]
        mats: dict[int, Sparse] = {}
        for k in range(1, self.dim + 1):
            M: Sparse = {}
            for j, s in enumerate(faces[k]):
                verts = sorted(s, key=str)
                for pos, v in enumerate(verts):
                    t = s - {v}
                    M.setdefault(index[k - 1][t], {})[j] = (-1) ** pos
            mats[k] = M
        counts = [len(fs) for fs in faces]
        if augmented:
            shifted = {k + 1: M for k, M in mats.items()}
            shifted[1] = {0: {j: 1 for j in range(len(faces[0]))}} if faces and faces[0] else {}
            return ChainComplex([1] + counts, shifted)
        return ChainComplex(counts, mats)

    def __repr__(self):
        return f"<SimplicialComplex {len(self.vertex_set)} vertices, f-vector {self.f_vector()}>"


def reduced_homology(K: SimplicialComplex) -> dict[int, int]:
    """Reduced rational Betti numbers by degree, starting at -1.

    The empty complex has rank 1 in degree -1 and nothing else.
    """
    if K.is_empty():
        return {-1: 1}
    h = homology(K.chain_complex(augmented=True))
    return {k - 1: b for k, b in enumerate(h.betti)}


def reduced_ranks(K: SimplicialComplex, top: int) -> tuple[int, ...]:
    """Reduced Betti numbers in degrees 0..top."""
    h = reduced_homology(K)
    return tuple(h.get(k, 0) for k in range(top + 1))


# -- small covers ------------------------------------------------------------------


def k_omega(c, omega: int) -> SimplicialComplex:
    """Full subcomplex of the dual boundary complex on facets F with <omega, lambda(F)> = 1."""
    from .polytope import dual_boundary_complex
    K = dual_boundary_complex(c.polytope)
    chosen = [f for f in range(c.polytope.n_facets) if gf2.dot(omega, c.lam[f])]
    return K.full_subcomplex(chosen)


def choi_park_terms(c) -> list[tuple[int, dict[int, int]]]:
    """(omega, reduced homology of K_omega) for every covector omega."""
    from .polytope import dual_boundary_complex
    if c.polytope.ideal_vertices:
        raise ValueError("the formula needs a polytope without ideal vertices")
    K = dual_boundary_complex(c.polytope)
    out = []
    for omega in range(1 << c.rank):
        chosen = [f for f in range(c.polytope.n_facets) if gf2.dot(omega, c.lam[f])]
        out.append((omega, reduced_homology(K.full_subcomplex(chosen))))
    return out


def choi_park_betti(c) -> HomologySummary:
    """Rational Betti numbers b_k = sum over omega of rank H~_{k-1}(K_omega)."""
    d = c.polytope.dim
    betti = [0] * (d + 1)
    for _, h in choi_park_terms(c):
        for k in range(d + 1):
            betti[k] += h.get(k - 1, 0)
    return HomologySummary(tuple(betti), tuple(() for _ in betti))
