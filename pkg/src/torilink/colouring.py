"""Facet colourings with values in (Z/2)^n."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import gf2
from .polytope import CombinatorialPolytope


class Colouring:
    """An assignment of (Z/2)^n vectors (int bitmasks) to the facets of a polytope.

    ``lam[k]`` is the colour of facet ``k``; ``None`` marks an uncoloured facet,
    which is only useful while building a colouring up.
    """

    def __init__(self, polytope: CombinatorialPolytope, rank: int,
                 lam: Sequence[int | None], name: str | None = None):
        if len(lam) != polytope.n_facets:
            raise ValueError("one colour per facet is required")
        for v in lam:
            if v is not None and v >> rank:
                raise ValueError(f"colour {v:b} does not fit in rank {rank}")
        self.polytope = polytope
        self.rank = rank
        self.lam = tuple(lam)
        self.name = name

    @classmethod
    def from_labels(cls, polytope, labels: Mapping[str, int], name=None):
        """Label-style palette: label i becomes the basis vector e_i."""
        n = max(labels.values())
        lam = [gf2.basis_vector(labels[f]) for f in polytope.facet_names]
        return cls(polytope, n, lam, name=name)

    @classmethod
    def from_vectors(cls, polytope, rank: int, vectors: Mapping[str, int], name=None):
        return cls(polytope, rank, [vectors.get(f) for f in polytope.facet_names], name=name)

    def __repr__(self):
        return f"<Colouring {self.name or ''} rank {self.rank} on {self.polytope.name}>"

    @property
    def total(self) -> bool:
        return all(v is not None for v in self.lam)

    def colours_at(self, face: int) -> list[int]:
        mask = self.polytope.faces[face].facets
        return [self.lam[f] for f in gf2.bits(mask) if self.lam[f] is not None]

    def span_at(self, face: int) -> dict[int, int]:
        return gf2.echelon(self.colours_at(face))

    def span_rank(self) -> int:
        return gf2.rank(v for v in self.lam if v is not None)

    def is_basis_palette(self) -> bool:
        """Every colour is a standard basis vector."""
        return self.total and all(gf2.popcount(v) == 1 for v in self.lam)

    def label_of(self, facet: int) -> int:
        v = self.lam[facet]
        if v is None or gf2.popcount(v) != 1:
            raise ValueError("facet colour is not a basis vector")
        return v.bit_length()

    def with_colour(self, facet: int, vector: int) -> "Colouring":
        lam = list(self.lam)
        lam[facet] = vector
        rank = max(self.rank, vector.bit_length())
        return Colouring(self.polytope, rank, lam, name=self.name)

    def extended(self, extra: int = 1) -> "Colouring":
        """Same vectors viewed in a palette with ``extra`` unused coordinates."""
        return Colouring(self.polytope, self.rank + extra, self.lam, name=self.name)

    def transformed(self, columns: Sequence[int]) -> "Colouring":
        """Apply the linear map with the given columns to every colour."""
        lam = [None if v is None else gf2.apply_matrix(columns, v) for v in self.lam]
        return Colouring(self.polytope, self.rank, lam, name=self.name)

    def reduced(self) -> "Colouring":
        """Re-express the colours in coordinates of their span (rank = span rank)."""
        basis = gf2.echelon(v for v in self.lam if v is not None)
        pivots = sorted(basis)
        lam = []
        for v in self.lam:
            if v is None:
                lam.append(None)
                continue
            coords = 0
            w = v
            for k, p in reversed(list(enumerate(pivots))):
                if (w >> p) & 1:
                    w ^= basis[p]
                    coords |= 1 << k
            lam.append(coords)
        return Colouring(self.polytope, len(pivots), lam, name=self.name)

    def restricted_to_link(self, vertex: int):
        """Induced colouring on the link of a vertex (same palette)."""
        from .polytope import vertex_link
        link = vertex_link(self.polytope, vertex)
        local = list(gf2.bits(self.polytope.faces[vertex].facets))
        return Colouring(link, self.rank, [self.lam[f] for f in local])

    # -- serialization --

    def to_dict(self) -> dict:
        out: dict = {"rank": self.rank}
        for name, v in zip(self.polytope.facet_names, self.lam):
            if v is not None:
                out[name] = gf2.to_bits(v, self.rank)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, polytope, data: Mapping):
        rank = int(data["rank"])
        vectors = {}
        for key, value in data.items():
            if key == "rank":
                continue
            if key not in polytope.facet_names:
                raise ValueError(f"unknown facet {key!r} in colouring")
            if isinstance(value, int):
                vectors[key] = gf2.basis_vector(value)
            else:
                if len(value) > rank:
                    raise ValueError(f"colour of {key} is longer than the rank")
                vectors[key] = gf2.from_bits(value)
        return cls.from_vectors(polytope, rank, vectors)


@dataclass(frozen=True)
class Violation:
    face: int
    facets: tuple[str, ...]
    colours: tuple[int, ...]

    def __str__(self):
        cols = ", ".join(format(c, "b") for c in self.colours)
        return f"face {self.face} ({'/'.join(self.facets)}): dependent colours {cols}"


def validate(c: Colouring) -> list[Violation]:
    """Faces whose (coloured) facets carry dependent colours.

    Ideal vertices are skipped.  Zero colours count as dependent.
    """
    P = c.polytope
    out = []
    for i, face in enumerate(P.faces):
        if i == 0 or face.ideal:
            continue
        facets = [f for f in gf2.bits(face.facets) if c.lam[f] is not None]
        cols = [c.lam[f] for f in facets]
        if not gf2.independent(cols):
            out.append(Violation(i, tuple(P.facet_names[f] for f in facets), tuple(cols)))
    return out


def is_proper(c: Colouring) -> bool:
    return c.total and not validate(c)


def orientable(c: Colouring) -> bool:
    """True iff some covector pairs to 1 with every facet colour."""
    if not c.total:
        raise ValueError("orientability needs a total colouring")
    return gf2.solve(list(c.lam), [1] * len(c.lam)) is not None


@dataclass(frozen=True)
class ColourAutomorphism:
    facet_perm: tuple[int, ...]
    colour_perm: tuple[int, ...]  # colour_perm[i-1] is the image of label i

    def compose(self, other: "ColourAutomorphism") -> "ColourAutomorphism":
        """self after other."""
        fp = tuple(self.facet_perm[j] for j in other.facet_perm)
        cp = tuple(self.colour_perm[j - 1] for j in other.colour_perm)
        return ColourAutomorphism(fp, cp)

    def inverse(self) -> "ColourAutomorphism":
        fp = [0] * len(self.facet_perm)
        for i, j in enumerate(self.facet_perm):
            fp[j] = i
        cp = [0] * len(self.colour_perm)
        for i, j in enumerate(self.colour_perm):
            cp[j - 1] = i + 1
        return ColourAutomorphism(tuple(fp), tuple(cp))

    def colour_cycles(self) -> list[tuple[int, ...]]:
        """Cycle notation of the colour permutation, fixed points omitted."""
        seen = set()
        out = []
        for start in range(1, len(self.colour_perm) + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.colour_perm[start - 1]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.colour_perm[nxt - 1]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out


def colour_automorphisms(c: Colouring, require_lattice: bool = True) -> list[ColourAutomorphism]:
    """Dual-graph automorphisms that map colour classes onto colour classes.

    With ``require_lattice`` the facet permutation must also preserve the whole
    face lattice (including the ideal markings).
    """
    if not c.is_basis_palette():
        raise ValueError("colour automorphisms need a label-style palette")
    P = c.polytope
    m = P.n_facets
    adj = P.dual_graph()
    labels = [c.label_of(f) for f in range(m)]
    order = _bfs_order(adj, m)
    results = []
    image = [-1] * m
    used = [False] * m
    cmap: dict[int, int] = {}
    cinv: dict[int, int] = {}

    def extend(k):
        if k == m:
            results.append(tuple(image))
            return
        f = order[k]
        for g in range(m):
            if used[g] or len(adj[g]) != len(adj[f]):
                continue
            a, b = labels[f], labels[g]
            if cmap.get(a, b) != b or cinv.get(b, a) != a:
                continue
            ok = True
            for h in adj[f]:
                if image[h] >= 0 and image[h] not in adj[g]:
                    ok = False
                    break
            if ok:
                for h in range(m):
                    if image[h] >= 0 and h not in adj[f] and image[h] in adj[g]:
                        ok = False
                        break
            if not ok:
                continue
            new = a not in cmap
            image[f] = g
            used[g] = True
            if new:
                cmap[a] = b
                cinv[b] = a
            extend(k + 1)
            image[f] = -1
            used[g] = False
            if new:
                del cmap[a]
                del cinv[b]

    extend(0)
    masks = {(f.facets, f.ideal) for f in P.faces}
    out = []
    n = max(labels)
    for perm in results:
        if require_lattice:
            if {(_permute_mask(f.facets, perm), f.ideal) for f in P.faces} != masks:
                continue
        cp = [0] * n
        for f in range(m):
            cp[labels[f] - 1] = labels[perm[f]]
        out.append(ColourAutomorphism(perm, tuple(cp)))
    return out


def _permute_mask(mask, perm):
    out = 0
    for f in gf2.bits(mask):
        out |= 1 << perm[f]
    return out


def _bfs_order(adj, m):
    order, seen = [], set()
    for root in range(m):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            f = queue.pop(0)
            order.append(f)
            for h in sorted(adj[f]):
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
    return order
