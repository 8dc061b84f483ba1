"""Manifolds assembled from 2^n copies of a coloured polytope: quotient cells,
the dual cubulation, cusps and descending links of the height function."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from . import gf2
from .colouring import Colouring, validate
from .homology import (ChainComplex, HomologySummary, SimplicialComplex, chain_complex_from_poset,
                       homology, orient_regular_cells)
from .polytope import is_cube, opposite_pairs, vertex_link


class QuotientComplex:
    """Copies of the faces of a coloured polytope in the assembled manifold.

    The copy of face ``f`` in polytope ``P_v`` is recorded as ``(f, r)`` where
    ``r`` is the canonical representative of ``v`` modulo the span of the
    colours of the facets containing ``f``.
    """

    def __init__(self, c: Colouring, check: bool = True):
        if not c.total:
            raise ValueError("colouring must assign every facet")
        if check:
            bad = validate(c)
            if bad:
                raise ValueError(f"improper colouring: {bad[0]}")
        self.colouring = c
        self.polytope = c.polytope
        self.rank = c.rank
        self.spans = [c.span_at(i) if i else {} for i in range(len(self.polytope.faces))]

    def rep(self, face: int, v: int) -> int:
        return gf2.reduce(v, self.spans[face])

    def copies(self, face: int) -> list[int]:
        return sorted({self.rep(face, v) for v in range(1 << self.rank)})

    def n_copies(self, face: int) -> int:
        return 1 << (self.rank - len(self.spans[face]))

    @property
    def n_top(self) -> int:
        return 1 << self.rank

    def glue(self, facet: int, v: int) -> int:
        """Index of the polytope copy glued to P_v across ``facet``."""
        return v ^ self.colouring.lam[facet]

    def real_faces(self):
        P = self.polytope
        return [i for i in range(len(P.faces)) if not P.faces[i].ideal]

    def cell_counts(self) -> tuple[int, ...]:
        """Number of cells by dimension 0..dim (ideal vertices excluded)."""
        P = self.polytope
        counts = [0] * (P.dim + 1)
        for i in self.real_faces():
            counts[P.dim - P.faces[i].codim] += self.n_copies(i)
        return tuple(counts)

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.cell_counts()))


def assemble(c: Colouring) -> QuotientComplex:
    return QuotientComplex(c)


@dataclass
class CubicalSpine:
    cubes: list[list[tuple[int, int]]]  # cubes[k] = [(face, rep), ...]
    complex: ChainComplex
    labels: dict  # edge index -> facet index

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cubes)

    def euler(self) -> int:
        return self.complex.euler()

    def homology(self) -> HomologySummary:
        return homology(self.complex)


def spine(q: QuotientComplex, signs: str = "auto") -> CubicalSpine:
    """Dual cubulation: one k-cube per copy of each real codimension-k face.

    With a basis palette the boundary signs follow the coordinate convention
    (facets ordered by index, sign (-1)^position, + at the end whose copy has
    bit 1 in the direction's colour); otherwise they are propagated as for
    any regular cell complex.
    """
    P = q.polytope
    c = q.colouring
    by_mask = {}
    for i in q.real_faces():
        by_mask.setdefault(P.faces[i].facets, i)
    cubes: list[list[tuple[int, int]]] = [[] for _ in range(P.dim + 1)]
    for i in q.real_faces():
        k = P.faces[i].codim
        for r in q.copies(i):
            cubes[k].append((i, r))
    for lst in cubes:
        lst.sort()
    index = [{cell: j for j, cell in enumerate(lst)} for lst in cubes]

    def facets_of(i, r):
        out = []
        mask = P.faces[i].facets
        for pos, F in enumerate(gf2.bits(mask)):
            g = by_mask[mask & ~(1 << F)]
            ends = (q.rep(g, r), q.rep(g, r ^ c.lam[F]))
            out.append((pos, F, g, ends))
        return out

    mode = signs
    if mode == "auto":
        mode = "coordinate" if c.is_basis_palette() else "propagate"
    labels = {j: next(gf2.bits(P.faces[i].facets)) for j, (i, _) in enumerate(cubes[1])}
    if mode == "coordinate":
        mats: dict[int, dict] = {}
        for k in range(1, P.dim + 1):
            M: dict = {}
            for j, (i, r) in enumerate(cubes[k]):
                for pos, F, g, ends in facets_of(i, r):
                    bit = c.lam[F]
                    for end in ends:
                        s = (-1) ** pos * (1 if end & bit else -1)
                        row = M.setdefault(index[k - 1][(g, end)], {})
                        row[j] = row.get(j, 0) + s
            mats[k] = M
        cx = ChainComplex([len(x) for x in cubes], mats)
    else:
        flat = [cell for lst in cubes for cell in lst]
        fidx = {cell: n for n, cell in enumerate(flat)}
        dims = [P.faces[i].codim for i, _ in flat]
        below = []
        for i, r in flat:
            below.append(sorted({fidx[(g, e)] for _, _, g, ends in facets_of(i, r) for e in ends}))
        cx = chain_complex_from_poset(dims, below)
    return CubicalSpine(cubes, cx, labels)


def euler_and_volume(q: QuotientComplex) -> tuple[int, Fraction]:
    """Euler characteristic and the volume as a multiple of pi^2 (4/3 chi)."""
    if q.polytope.dim != 4:
        raise ValueError("the volume identity is only used in dimension 4")
    chi = q.euler()
    return chi, Fraction(4, 3) * chi


@dataclass
class Cusp:
    vertex: int
    copy: int
    link_colouring: Colouring
    one_same_pair: bool
    section: HomologySummary

    @property
    def orientable(self) -> bool:
        return self.section.betti[-1] == 1


def cusps(q: QuotientComplex) -> list[Cusp]:
    """One cusp per copy of each ideal vertex, with the homology of its section."""
    P = q.polytope
    c = q.colouring
    if not P.ideal_vertices:
        raise ValueError("polytope has no ideal vertices")
    out = []
    for v in P.ideal_vertices:
        lc = c.restricted_to_link(v).reduced()
        link = lc.polytope
        pairs = opposite_pairs(link)
        same = sum(1 for a, b in pairs if lc.lam[a] == lc.lam[b])
        section = spine(QuotientComplex(lc)).homology()
        for r in q.copies(v):
            out.append(Cusp(v, r, lc, same == 1, section))
    return out


def descending_link(q: QuotientComplex, v: int) -> SimplicialComplex:
    """Descending link at spine vertex v of the height f(v) = sum of coordinates.

    The link of a spine vertex is the simplicial complex on the facets whose
    simplices are the facet sets of real faces; the descending part is the
    full subcomplex on facets whose colour coordinate of v is 1.
    """
    c = q.colouring
    if not c.is_basis_palette():
        raise ValueError("the height function is only defined for a basis palette")
    P = q.polytope
    link = SimplicialComplex(frozenset(gf2.bits(P.faces[i].facets))
                             for i in q.real_faces() if i)
    active = [F for F in range(P.n_facets) if v & c.lam[F]]
    return link.full_subcomplex(active)


def height(v: int) -> int:
    return gf2.popcount(v)
