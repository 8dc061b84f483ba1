"""Combinatorial face lattices of simple (possibly ideal) polytopes.

A face is recorded by the bitmask of the facets containing it.  Builtin
polytopes are produced from a vertex/facet incidence table by closing the
facet vertex-sets under intersection, so no face lattice is typed in by hand.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import bits, popcount


@dataclass(frozen=True)
class Face:
    facets: int
    codim: int
    ideal: bool = False


class CombinatorialPolytope:
    """Graded face poset of a polytope.

    ``faces[0]`` is the polytope itself; ``faces[1..m]`` are the facets in
    facet-index order.  ``below[i]`` lists the faces of codimension
    ``faces[i].codim + 1`` contained in face ``i``.
    """

    def __init__(self, dim: int, facet_names: Sequence[str], faces: Sequence[Face],
                 below: Sequence[Iterable[int]], name: str | None = None):
        self.dim = dim
        self.facet_names = tuple(facet_names)
        self.faces = tuple(faces)
        self.below = tuple(tuple(sorted(b)) for b in below)
        self.name = name
        above: list[list[int]] = [[] for _ in self.faces]
        for i, subs in enumerate(self.below):
            for j in subs:
                above[j].append(i)
        self.above = tuple(tuple(a) for a in above)
        self._check_structure()

    def _check_structure(self):
        m = len(self.facet_names)
        if self.faces[0] != Face(0, 0):
            raise ValueError("face 0 must be the polytope itself")
        for i in range(m):
            if self.faces[i + 1] != Face(1 << i, 1):
                raise ValueError(f"face {i + 1} must be facet {self.facet_names[i]}")
        for i, subs in enumerate(self.below):
            for j in subs:
                if self.faces[j].codim != self.faces[i].codim + 1:
                    raise ValueError("face poset is not graded")
                if self.faces[j].facets & self.faces[i].facets != self.faces[i].facets:
                    raise ValueError("incidence contradicts facet sets")
        for f in self.faces:
            if f.ideal and f.codim != self.dim:
                raise ValueError("only vertices may be ideal")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_vertices(cls, dim: int, facet_names: Sequence[str],
                      vertices: Sequence[tuple[int, bool]], name: str | None = None):
        """Build the lattice from vertex facet-masks (``(mask, ideal)`` pairs)."""
        m = len(facet_names)
        vsets = [0] * m
        for k, (mask, _) in enumerate(vertices):
            for f in bits(mask):
                vsets[f] |= 1 << k
        for f in range(m):
            if not vsets[f]:
                raise ValueError(f"facet {facet_names[f]} has no vertex")
        # close the facet vertex-sets under intersection
        found = set(vsets)
        frontier = list(found)
        while frontier:
            nxt = []
            for x in frontier:
                for vs in vsets:
                    y = x & vs
                    if y and y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        everything = (1 << len(vertices)) - 1
        found.discard(everything)

        def facet_mask(vset):
            return sum(1 << f for f in range(m) if vset & vsets[f] == vset)

        by_size = sorted(found, key=lambda s: -popcount(s))
        codim = {everything: 0}
        for s in by_size:
            codim[s] = 1 + max(c for t, c in codim.items() if t & s == s and t != s)
        # order: polytope, facets in index order, then by codim and mask
        ordered = [everything] + list(vsets)
        rest = sorted(found - set(vsets), key=lambda s: (codim[s], facet_mask(s), s))
        ordered += rest
        if len(set(ordered)) != len(ordered):
            raise ValueError("two facets share the same vertex set")
        ideal_of = {1 << k: ideal for k, (_, ideal) in enumerate(vertices)}
        faces = []
        for s in ordered:
            fm = 0 if s == everything else facet_mask(s)
            faces.append(Face(fm, codim[s], ideal_of.get(s, False) if codim[s] == dim else False))
        for k, (mask, _) in enumerate(vertices):
            if codim.get(1 << k) != dim:
                raise ValueError(f"vertex {k} is not a face of codimension {dim}")
        masks = [f.facets for f in faces]
        if len(set(masks)) != len(masks):
            raise ValueError("face identity by facet set fails for this polytope")
        index = {s: i for i, s in enumerate(ordered)}
        below = []
        for s in ordered:
            c = codim[s]
            below.append([index[t] for t in ordered
                          if codim[t] == c + 1 and t & s == t])
        return cls(dim, facet_names, faces, below, name=name)

    # -- queries ----------------------------------------------------------

    @property
    def n_facets(self) -> int:
        return len(self.facet_names)

    def by_codim(self, k: int) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.codim == k]

    @property
    def vertices(self) -> list[int]:
        return self.by_codim(self.dim)

    @property
    def real_vertices(self) -> list[int]:
        return [v for v in self.vertices if not self.faces[v].ideal]

    @property
    def ideal_vertices(self) -> list[int]:
        return [v for v in self.vertices if self.faces[v].ideal]

    def f_vector(self, real_only: bool = False) -> tuple[int, ...]:
        """Face counts by dimension 0..dim-1 (ideal vertices optionally dropped)."""
        counts = [0] * self.dim
        for f in self.faces[1:]:
            if real_only and f.ideal:
                continue
            counts[self.dim - f.codim] += 1
        return tuple(counts)

    def facet_index(self, name: str) -> int:
        return self.facet_names.index(name)

    def mask_of(self, names: Iterable[str]) -> int:
        return sum(1 << self.facet_index(n) for n in names)

    def names_of(self, mask: int) -> list[str]:
        return [self.facet_names[i] for i in bits(mask)]

    def faces_with_mask(self, mask: int) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.facets == mask and i]

    def is_real(self, i: int) -> bool:
        """True unless the face is an ideal vertex."""
        return not self.faces[i].ideal

    def subfaces(self, i: int) -> set[int]:
        """All faces contained in face ``i`` (including itself)."""
        seen = {i}
        stack = [i]
        while stack:
            for j in self.below[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    def superfaces(self, i: int) -> set[int]:
        seen = {i}
        stack = [i]
        while stack:
            for j in self.above[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    def ridge_pairs(self) -> set[tuple[int, int]]:
        """Pairs of facet indices meeting along a codimension-2 face."""
        out = set()
        for i in self.by_codim(2):
            fs = list(bits(self.faces[i].facets))
            if len(fs) == 2:
                out.add((fs[0], fs[1]))
        return out

    def dual_graph(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {f: set() for f in range(self.n_facets)}
        for a, b in self.ridge_pairs():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_simple_cell(self, i: int) -> bool:
        return popcount(self.faces[i].facets) == self.faces[i].codim

    def validate(self) -> list[str]:
        """Check the simplicity and cusp conditions; returns problems found."""
        problems = []
        d = self.dim
        for v in self.vertices:
            k = popcount(self.faces[v].facets)
            if self.faces[v].ideal:
                if k != 2 * (d - 1):
                    problems.append(f"ideal vertex {v} lies in {k} facets")
                elif not is_cube(vertex_link(self, v)):
                    problems.append(f"link of ideal vertex {v} is not a cube")
            elif k != d:
                problems.append(f"real vertex {v} lies in {k} facets")
        return problems

    def __repr__(self):
        label = self.name or "polytope"
        return f"<{label}: dim {self.dim}, f-vector {self.f_vector()}>"

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "facets": list(self.facet_names),
            "vertices": [{"facets": self.names_of(self.faces[v].facets),
                          "ideal": self.faces[v].ideal} for v in self.vertices],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict, name: str | None = None):
        names = list(data["facets"])
        verts = []
        for v in data["vertices"]:
            mask = sum(1 << names.index(n) for n in v["facets"])
            verts.append((mask, bool(v.get("ideal", False))))
        return cls.from_vertices(int(data["dim"]), names, verts, name=name or data.get("name"))


@dataclass(frozen=True)
class FacePath:
    """A walk in the dual graph, recorded by facet indices."""

    polytope: CombinatorialPolytope
    steps: tuple[int, ...]

    def __post_init__(self):
        adj = self.polytope.dual_graph()
        for a, b in zip(self.steps, self.steps[1:]):
            if b not in adj[a]:
                raise ValueError(f"facets {a} and {b} are not adjacent")


# -- builtins ----------------------------------------------------------------


def simplex(d: int) -> CombinatorialPolytope:
    names = [str(i + 1) for i in range(d + 1)]
    full = (1 << (d + 1)) - 1
    verts = [(full ^ (1 << i), False) for i in range(d + 1)]
    return CombinatorialPolytope.from_vertices(d, names, verts, name=f"simplex({d})")


def polygon(n: int) -> CombinatorialPolytope:
    names = [str(i + 1) for i in range(n)]
    verts = [((1 << i) | (1 << ((i + 1) % n)), False) for i in range(n)]
    return CombinatorialPolytope.from_vertices(2, names, verts, name=f"polygon({n})")


def segment() -> CombinatorialPolytope:
    return CombinatorialPolytope.from_vertices(1, ["0", "1"], [(1, False), (2, False)],
                                               name="segment")


def product(P: CombinatorialPolytope, Q: CombinatorialPolytope,
            prefixes: tuple[str, str] = ("L", "R"), name: str | None = None):
    """Face lattice of P x Q; facets are (facet x Q) followed by (P x facet)."""
    if P.ideal_vertices or Q.ideal_vertices:
        raise ValueError("product is only defined here for polytopes without ideal vertices")
    shift = P.n_facets
    names = [prefixes[0] + n for n in P.facet_names] + [prefixes[1] + n for n in Q.facet_names]
    verts = [(P.faces[u].facets | (Q.faces[v].facets << shift), False)
             for u in P.vertices for v in Q.vertices]
    return CombinatorialPolytope.from_vertices(P.dim + Q.dim, names, verts, name=name)


def cube(d: int) -> CombinatorialPolytope:
    if d == 1:
        return segment()
    result = segment()
    for k in range(2, d + 1):
        result = product(result, segment(), prefixes=("", str(k - 1)))
    # rename facets as 0..., 1... per coordinate for readability
    names = []
    for j in range(d):
        names += [f"x{j + 1}=0", f"x{j + 1}=1"]
    verts = [(result.faces[v].facets, False) for v in result.vertices]
    return CombinatorialPolytope.from_vertices(d, names, verts, name=f"cube{d}")


def prism(n: int) -> CombinatorialPolytope:
    out = product(polygon(n), segment(), prefixes=("side", "cap"))
    out.name = f"prism({n})"
    return out


def pentagon_product() -> CombinatorialPolytope:
    return product(polygon(5), polygon(5), name="pentagon_product")


def suspension_of_triangle() -> CombinatorialPolytope:
    """Three bigons meeting pairwise along edges, with two vertices in all three.

    Not a convex polytope: the two vertices share the same facet set, so the
    incidences are given explicitly.
    """
    faces = [Face(0, 0), Face(1, 1), Face(2, 1), Face(4, 1),
             Face(3, 2), Face(5, 2), Face(6, 2), Face(7, 3), Face(7, 3)]
    below = [[1, 2, 3], [4, 5], [4, 6], [5, 6], [7, 8], [7, 8], [7, 8], [], []]
    return CombinatorialPolytope(3, ["1", "2", "3"], faces, below,
                                 name="suspension_of_triangle")


def rectified_simplex():
    """Vertices and cells of the 4-dimensional rectified simplex.

    Vertices are the permutations of (0,0,0,1,1).  Cells are cut out by the
    supporting hyperplanes x_k = 0 (octahedra) and x_k = 1 (tetrahedra).
    Returns ``(vertices, cells)`` with each cell as ``(k, value, vertex ids)``.
    """
    verts = sorted(set(itertools.permutations((0, 0, 0, 1, 1))), reverse=True)
    cells = []
    for k in range(5):
        for value in (0, 1):
            cells.append((k, value, [i for i, v in enumerate(verts) if v[k] == value]))
    return verts, cells


def rectified_simplex_edges(verts, cells) -> set[tuple[int, int]]:
    """Edges as pairs whose common cells cut out exactly that pair."""
    edges = set()
    for a, b in itertools.combinations(range(len(verts)), 2):
        common = [set(c[2]) for c in cells if a in c[2] and b in c[2]]
        if common and set.intersection(*common) == {a, b}:
            edges.add((a, b))
    return edges


def p4() -> CombinatorialPolytope:
    """The right-angled polytope dual to the rectified 4-simplex.

    Facet ``"ij"`` is dual to the rectified-simplex vertex with ones in
    coordinates i and j; tetrahedral cells give real vertices and octahedral
    cells give ideal vertices.
    """
    verts, cells = rectified_simplex()
    edges = rectified_simplex_edges(verts, cells)
    rule = {(a, b) for a, b in itertools.combinations(range(len(verts)), 2)
            if sum(x != y for x, y in zip(verts[a], verts[b])) == 2}
    if edges != rule:
        raise AssertionError("rectified simplex edges disagree with the two-coordinate rule")
    names = ["".join(str(k + 1) for k in range(5) if v[k]) for v in verts]
    pverts = []
    # real vertices (tetrahedral cells) first, then ideal ones
    for value, ideal in ((1, False), (0, True)):
        for k, val, ids in cells:
            if val == value:
                pverts.append((sum(1 << i for i in ids), ideal))
    return CombinatorialPolytope.from_vertices(4, names, pverts, name="P4")


def p3() -> CombinatorialPolytope:
    """The ideal triangular bipyramid: faces N1..N3 above, S1..S3 below."""
    names = ["N1", "N2", "N3", "S1", "S2", "S3"]
    idx = {n: i for i, n in enumerate(names)}
    verts = [(sum(1 << idx[f"N{j}"] for j in (1, 2, 3)), False),
             (sum(1 << idx[f"S{j}"] for j in (1, 2, 3)), False)]
    for k in (1, 2, 3):
        mask = sum((1 << idx[f"N{j}"]) | (1 << idx[f"S{j}"]) for j in (1, 2, 3) if j != k)
        verts.append((mask, True))
    return CombinatorialPolytope.from_vertices(3, names, verts, name="P3")


_PARAM = re.compile(r"^(\w+)\((\d+)\)$")


def build_builtin(name: str) -> CombinatorialPolytope:
    """Builtin polytopes by name (``P3``, ``P4``, ``simplex(4)``, ...)."""
    fixed = {
        "P3": p3,
        "P4": p4,
        "pentagon": lambda: _renamed(polygon(5), "pentagon"),
        "square": lambda: _renamed(polygon(4), "square"),
        "triangle": lambda: _renamed(polygon(3), "triangle"),
        "cube3": lambda: cube(3),
        "pentagon_product": pentagon_product,
        "segment": segment,
        "suspension_of_triangle": suspension_of_triangle,
    }
    if name in fixed:
        return fixed[name]()
    m = _PARAM.match(name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        makers = {"simplex": simplex, "cube": cube, "polygon": polygon, "prism": prism}
        if kind in makers and n >= 1:
            return makers[kind](n)
    raise ValueError(f"unknown builtin polytope {name!r}")


def _renamed(P, name):
    P.name = name
    return P


# -- derived polytopes ---------------------------------------------------------


def vertex_link(P: CombinatorialPolytope, v: int) -> CombinatorialPolytope:
    """Link of a vertex: facets are the facets of P through v, vertices the edges."""
    if P.faces[v].codim != P.dim:
        raise ValueError("not a vertex")
    vmask = P.faces[v].facets
    local = list(bits(vmask))
    names = [P.facet_names[f] for f in local]
    pos = {f: k for k, f in enumerate(local)}
    verts = []
    for e in P.above[v]:
        m = sum(1 << pos[f] for f in bits(P.faces[e].facets))
        verts.append((m, False))
    return CombinatorialPolytope.from_vertices(P.dim - 1, names, verts, name=f"link({v})")


def dual_boundary_complex(P: CombinatorialPolytope):
    """Simplicial complex on the facets; a set of k+1 facets is a simplex when
    they meet in a face of codimension k+1."""
    from .homology import SimplicialComplex
    if P.ideal_vertices:
        raise ValueError("dual complex is only built for polytopes without ideal vertices")
    return SimplicialComplex(frozenset(bits(P.faces[v].facets)) for v in P.vertices)


def opposite_pairs(P: CombinatorialPolytope) -> list[tuple[int, int]]:
    """Pairs of facets with no common face (for a cube: the opposite pairs)."""
    meet = set()
    for f in P.faces[1:]:
        fs = list(bits(f.facets))
        for a, b in itertools.combinations(fs, 2):
            meet.add((a, b))
    return [(a, b) for a, b in itertools.combinations(range(P.n_facets), 2)
            if (a, b) not in meet]


def is_cube(P: CombinatorialPolytope) -> bool:
    d = P.dim
    if P.n_facets != 2 * d:
        return False
    pairs = opposite_pairs(P)
    partners = [0] * P.n_facets
    for a, b in pairs:
        partners[a] += 1
        partners[b] += 1
    if any(p != 1 for p in partners):
        return False
    expected = tuple(2 ** (d - k) * _binom(d, k) for k in range(d))
    return P.f_vector() == expected


def _binom(n, k):
    from math import comb
    return comb(n, k)
