"""Combinatorial Dehn filling of ideal vertices, smoothing of same-coloured
red ridges, recognition of the results and the red core components."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import gf2
from .colouring import Colouring, validate
from .homology import HomologySummary, chain_complex_from_poset, homology
from .polytope import (CombinatorialPolytope, Face, build_builtin, cube, opposite_pairs, prism,
                       simplex, suspension_of_triangle, vertex_link, pentagon_product)

SAME_COLOUR = "same-colour"


@dataclass
class FilledPolytope:
    polytope: CombinatorialPolytope
    colouring: Colouring
    red: list[int]  # face indices of red codim-2 faces still in the lattice
    provenance: dict[int, int]  # red face -> ideal vertex of the source polytope
    source: CombinatorialPolytope
    parent: "FilledPolytope | None" = None  # the unsmoothed filling, if smoothed
    merged_red: list[int] = field(default_factory=list)  # parent red faces absorbed by smoothing

    @property
    def smoothed(self) -> bool:
        return self.parent is not None

    def unsmoothed(self) -> "FilledPolytope":
        return self.parent or self


class FillingChoice(dict):
    """Ideal vertex -> opposite facet pair (facet indices) or ``"same-colour"``."""

    @classmethod
    def uniform(cls, P: CombinatorialPolytope, value=SAME_COLOUR):
        return cls({v: value for v in P.ideal_vertices})


def link_pairs(P: CombinatorialPolytope, v: int) -> list[tuple[int, int]]:
    """Opposite facet pairs of the cube link at ideal vertex v (as facet indices of P)."""
    link = vertex_link(P, v)
    local = list(gf2.bits(P.faces[v].facets))
    if not _is_cube(link):
        raise ValueError(f"link of vertex {v} is not a cube")
    return [(local[a], local[b]) for a, b in opposite_pairs(link)]


def _is_cube(link):
    from .polytope import is_cube
    return is_cube(link)


def resolve_choice(P, c: Colouring, choice: Mapping) -> dict[int, tuple[int, int]]:
    out = {}
    for v in P.ideal_vertices:
        if v not in choice:
            raise ValueError(f"no filling choice for ideal vertex {v}")
        pairs = link_pairs(P, v)
        ch = choice[v]
        if ch == SAME_COLOUR:
            same = [p for p in pairs if c.lam[p[0]] == c.lam[p[1]]]
            if len(same) != 1:
                raise ValueError(f"vertex {v} has {len(same)} same-coloured opposite pairs")
            out[v] = same[0]
        else:
            a, b = sorted(ch)
            if (a, b) not in pairs:
                raise ValueError(f"{P.names_of((1 << a) | (1 << b))} is not an opposite pair at {v}")
            out[v] = (a, b)
    return out


def all_choices(P, c=None) -> list[dict[int, tuple[int, int]]]:
    """Every combination of collapse directions over the ideal vertices."""
    verts = P.ideal_vertices
    options = [link_pairs(P, v) for v in verts]
    return [dict(zip(verts, combo)) for combo in itertools.product(*options)]


def dehn_fill(P: CombinatorialPolytope, c: Colouring, choice: Mapping) -> FilledPolytope:
    """Replace every ideal vertex by a red codim-2 face joining the chosen pair."""
    chosen = resolve_choice(P, c, choice)
    verts = [(P.faces[v].facets, False) for v in P.real_vertices]
    red_masks = {}
    for v in P.ideal_vertices:
        a, b = chosen[v]
        others = [p for p in link_pairs(P, v) if set(p) != {a, b}]
        for pick in itertools.product(*others):
            mask = (1 << a) | (1 << b)
            for f in pick:
                mask |= 1 << f
            verts.append((mask, False))
        red_masks[(1 << a) | (1 << b)] = v
    name = f"filled({P.name})" if P.name else None
    Q = CombinatorialPolytope.from_vertices(P.dim, P.facet_names, verts, name=name)
    red, prov = [], {}
    for mask, v in red_masks.items():
        found = [i for i, f in enumerate(Q.faces) if f.facets == mask and f.codim == 2]
        if len(found) != 1:
            raise ValueError("red face could not be located")
        red.append(found[0])
        prov[found[0]] = v
    red.sort()
    return FilledPolytope(Q, Colouring(Q, c.rank, c.lam, name=c.name), red, prov, P)


def smooth(fp: FilledPolytope) -> FilledPolytope:
    """Merge the two facets at every red face whose facets share a colour."""
    P = fp.polytope
    c = fp.colouring
    m = P.n_facets
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merging = []
    for r in sorted(fp.red, key=lambda r: P.faces[r].facets):
        a, b = gf2.bits(P.faces[r].facets)
        if c.lam[a] != c.lam[b]:
            continue
        ra, rb = find(a), find(b)
        if ra == rb:
            raise ValueError(f"smoothing would identify facet {P.facet_names[a]} with itself")
        parent[max(ra, rb)] = min(ra, rb)
        merging.append(r)
    if not merging:
        return fp
    roots = sorted({find(f) for f in range(m)})
    new_index = {r: k for k, r in enumerate(roots)}
    fmap = [new_index[find(f)] for f in range(m)]

    def image(mask):
        out = 0
        for f in gf2.bits(mask):
            out |= 1 << fmap[f]
        return out

    # faces whose images agree across a covering relation fuse into one cell
    nf = len(P.faces)
    cls = list(range(nf))

    def cfind(x):
        while cls[x] != x:
            cls[x] = cls[cls[x]]
            x = cls[x]
        return x

    for i in range(1, nf):
        for j in P.below[i]:
            if image(P.faces[i].facets) == image(P.faces[j].facets):
                ri, rj = cfind(i), cfind(j)
                if ri != rj:
                    cls[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(nf):
        groups.setdefault(cfind(i), []).append(i)
    # each class is represented by its top (lowest codimension) member
    cells = []
    for members in groups.values():
        top = min(members, key=lambda i: P.faces[i].codim)
        cells.append((members, top))
    rank_of = {}
    for members, top in cells:
        for i in members:
            rank_of[i] = top
    tops = [top for _, top in cells]
    # order: polytope, new facets by index, then by codimension and mask
    facet_tops = {}
    for t in tops:
        if P.faces[t].codim == 1:
            facet_tops[fmap[next(gf2.bits(P.faces[t].facets))]] = t
    rest = sorted((t for t in tops if P.faces[t].codim > 1),
                  key=lambda t: (P.faces[t].codim, image(P.faces[t].facets), t))
    order = [0] + [facet_tops[k] for k in range(len(roots))] + rest
    pos = {t: k for k, t in enumerate(order)}
    faces = []
    below = []
    for t in order:
        codim = P.faces[t].codim
        faces.append(Face(image(P.faces[t].facets), codim))
        subs = set()
        for i in groups[cfind(t)]:
            for j in P.below[i]:
                tj = rank_of[j]
                if P.faces[tj].codim == codim + 1:
                    subs.add(pos[tj])
        below.append(sorted(subs))
    names = []
    for k, r in enumerate(roots):
        members = [P.facet_names[f] for f in range(m) if fmap[f] == k]
        names.append("+".join(members))
    Q = CombinatorialPolytope(P.dim, names, faces, below, name=f"smoothed({P.name})")
    lam = [c.lam[r] for r in roots]
    red_left = [pos[r] for r in fp.red if r not in merging]
    prov = {pos[r]: fp.provenance[r] for r in fp.red if r not in merging}
    return FilledPolytope(Q, Colouring(Q, c.rank, lam, name=c.name), sorted(red_left), prov,
                          fp.source, parent=fp, merged_red=sorted(merging))


# -- recognition ---------------------------------------------------------------


def _templates(dim: int) -> list[tuple[str, CombinatorialPolytope]]:
    out = [(f"simplex({dim})", simplex(dim))]
    out.append(("cube3" if dim == 3 else f"cube({dim})", cube(dim)))
    if dim == 4:
        out.append(("pentagon_product", pentagon_product()))
    if dim == 3:
        for n in range(3, 9):
            out.append((f"prism({n})", prism(n)))
        out.append(("suspension_of_triangle", suspension_of_triangle()))
    return out


def _mask_profile(P):
    return sorted((f.codim, gf2.popcount(f.facets)) for f in P.faces)


def isomorphic(P: CombinatorialPolytope, Q: CombinatorialPolytope) -> bool:
    """Facet bijection carrying the multiset of face facet-sets of P onto Q's."""
    if P.dim != Q.dim or P.n_facets != Q.n_facets or P.f_vector() != Q.f_vector():
        return False
    if _mask_profile(P) != _mask_profile(Q):
        return False
    from collections import Counter
    target = Counter((f.codim, f.facets) for f in Q.faces)
    source = [(f.codim, f.facets) for f in P.faces]
    adjP, adjQ = P.dual_graph(), Q.dual_graph()
    m = P.n_facets
    image = [-1] * m
    used = [False] * m

    def mapped(mask):
        out = 0
        for f in gf2.bits(mask):
            out |= 1 << image[f]
        return out

    def extend(k):
        if k == m:
            return Counter((c, mapped(mask)) for c, mask in source) == target
        for g in range(m):
            if used[g] or len(adjP[k]) != len(adjQ[g]):
                continue
            if any(image[h] >= 0 and ((image[h] in adjQ[g]) != (h in adjP[k])) for h in range(k)):
                continue
            image[k] = g
            used[g] = True
            if extend(k + 1):
                return True
            image[k] = -1
            used[g] = False
        return False

    return extend(0)


def recognize(P: CombinatorialPolytope) -> str:
    for name, T in _templates(P.dim):
        if isomorphic(P, T):
            return name
    return "unknown"


# -- the filled manifold ---------------------------------------------------------


class FilledQuotient:
    """All copies (face, coset) of a filled polytope, including the top cells."""

    def __init__(self, fp: FilledPolytope, c: Colouring | None = None, require_proper=True):
        c = c if c is not None and c.polytope is fp.polytope else fp.colouring
        if require_proper:
            bad = validate(c)
            if bad:
                raise ValueError(f"improper inherited colouring: {bad[0]}")
        P = fp.polytope
        self.fp = fp
        self.colouring = c
        self.spans = [c.span_at(i) if i else {} for i in range(len(P.faces))]
        cells = []
        for i in range(len(P.faces)):
            for r in sorted({gf2.reduce(v, self.spans[i]) for v in range(1 << c.rank)}):
                cells.append((i, r))
        self.cells = cells
        self.index = {cell: k for k, cell in enumerate(cells)}
        self.dims = [P.dim - P.faces[i].codim for i, _ in cells]
        self.below = [sorted({self.index[(j, gf2.reduce(r, self.spans[j]))] for j in P.below[i]})
                      for i, r in cells]

    def counts(self) -> tuple[int, ...]:
        out = [0] * (self.fp.polytope.dim + 1)
        for d in self.dims:
            out[d] += 1
        return tuple(out)

    def chain_complex(self):
        return chain_complex_from_poset(self.dims, self.below)

    def homology(self) -> HomologySummary:
        return homology(self.chain_complex())

    def fundamental_group_trivial(self) -> bool:
        return edge_path_group_trivial(self.dims, self.below)


def filled_manifold_homology(fp: FilledPolytope, c: Colouring | None = None) -> HomologySummary:
    return FilledQuotient(fp, c).homology()


def edge_path_group_trivial(dims, below) -> bool:
    """Whether the edge-path group of the 2-skeleton is trivial.

    Generators are edges outside a spanning tree; each 2-cell contributes its
    boundary word.  Relators of length one kill their generator, and a
    generator occurring exactly once in a relator is eliminated (Tietze).
    """
    verts = [k for k, d in enumerate(dims) if d == 0]
    edges = [k for k, d in enumerate(dims) if d == 1]
    squares = [k for k, d in enumerate(dims) if d == 2]
    ends = {e: tuple(below[e]) for e in edges}
    # spanning forest
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = set()
    for e in edges:
        a, b = ends[e]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            tree.add(e)
    if len({find(v) for v in verts}) != 1:
        return False
    gens = [e for e in edges if e not in tree]
    relators = []
    for s in squares:
        word = _boundary_cycle(s, below, ends)
        rel = [(e, sgn) for e, sgn in word if e not in tree]
        relators.append(rel)
    alive = set(gens)
    rels = [_free_reduce(r) for r in relators]
    changed = True
    while changed and alive:
        changed = False
        for r in rels:
            r[:] = _free_reduce([(e, s) for e, s in r if e in alive])
            counts = {}
            for e, _ in r:
                counts[e] = counts.get(e, 0) + 1
            once = [e for e, n in counts.items() if n == 1]
            if once:
                x = once[0]
                # x = (rest of relator)^{+-1}: substitute into the other relators
                i = next(k for k, (e, _) in enumerate(r) if e == x)
                sgn = r[i][1]
                rest = r[i + 1:] + r[:i]
                repl = _invert(rest) if sgn > 0 else rest
                for other in rels:
                    if other is r:
                        continue
                    new = []
                    for e, s in other:
                        if e == x:
                            new.extend(repl if s > 0 else _invert(repl))
                        else:
                            new.append((e, s))
                    other[:] = _free_reduce(new)
                alive.discard(x)
                r[:] = []
                changed = True
    return not alive


def _invert(word):
    return [(e, -s) for e, s in reversed(word)]


def _free_reduce(word):
    out = []
    for e, s in word:
        if out and out[-1] == (e, -s):
            out.pop()
        else:
            out.append((e, s))
    while len(out) >= 2 and out[0] == (out[-1][0], -out[-1][1]):
        out = out[1:-1]
    return out


def _boundary_cycle(s, below, ends):
    """Edges around a 2-cell with traversal signs (+1 along tail->head)."""
    edges = list(below[s])
    start = edges[0]
    a, b = ends[start]
    word = [(start, 1)]
    cur = b
    used = {start}
    while len(used) < len(edges):
        e = next(x for x in edges if x not in used and cur in ends[x])
        tail, head = ends[e]
        if tail == cur:
            word.append((e, 1))
            cur = head
        else:
            word.append((e, -1))
            cur = tail
        used.add(e)
    if cur != a:
        raise ValueError("2-cell boundary is not a closed cycle")
    return word


# -- core components -------------------------------------------------------------


@dataclass
class CoreComponent:
    cells: list[tuple[int, int]]  # red cell copies (face, rep) in the unsmoothed filling
    euler: int
    orientable: bool
    closed: bool
    colours: tuple[int, ...]  # colour vectors of the facets carrying the red cells
    homology: HomologySummary

    @property
    def size(self) -> int:
        return len(self.cells)


def core_components(fp: FilledPolytope, c: Colouring | None = None) -> list[CoreComponent]:
    """Connected unions of red-cell copies in the filled manifold."""
    base = fp.unsmoothed()
    P = base.polytope
    c = base.colouring if c is None or c.polytope is not P else c
    spans = [c.span_at(i) if i else {} for i in range(len(P.faces))]

    def rep(i, v):
        return gf2.reduce(v, spans[i])

    red_copies = []
    for r in base.red:
        for v in sorted({rep(r, v) for v in range(1 << c.rank)}):
            red_copies.append((r, v))
    # union red copies through shared sub-cells
    parent = {x: x for x in red_copies}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict = {}
    subcells: dict = {}
    for r, v in red_copies:
        subs = {(j, rep(j, v)) for j in P.subfaces(r)}
        subcells[(r, v)] = subs
        for s in subs:
            if s in owner:
                a, b = find(owner[s]), find((r, v))
                if a != b:
                    parent[a] = b
            else:
                owner[s] = (r, v)
    comps: dict = {}
    for x in red_copies:
        comps.setdefault(find(x), []).append(x)
    out = []
    d = P.dim - 2
    for members in sorted(comps.values()):
        cells = sorted(set().union(*(subcells[x] for x in members)))
        idx = {cell: k for k, cell in enumerate(cells)}
        dims = [P.dim - P.faces[j].codim for j, _ in cells]
        below = [sorted({idx[(k, rep(k, v))] for k in P.below[j]}) for j, v in cells]
        # closedness: every codim-1 cell of the component lies in two top cells
        uses = {}
        for k, cell in enumerate(cells):
            if dims[k] == d:
                for b in below[k]:
                    uses[b] = uses.get(b, 0) + 1
        closed = all(uses.get(k, 0) == 2 for k in range(len(cells)) if dims[k] == d - 1)
        h = homology(chain_complex_from_poset(dims, below))
        chi = sum((-1) ** x for x in dims)
        colours = tuple(sorted({c.lam[f] for r, _ in members for f in gf2.bits(P.faces[r].facets)}))
        out.append(CoreComponent(members, chi, h.betti[d] == 1, closed, colours, h))
    return out
