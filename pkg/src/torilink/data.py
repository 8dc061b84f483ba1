"""Builtin colourings, facet labels and presentations."""

from __future__ import annotations

from . import gf2
from .colouring import Colouring
from .polytope import CombinatorialPolytope, build_builtin


def _pair(i, j):
    a, b = sorted(((i - 1) % 5 + 1, (j - 1) % 5 + 1))
    return f"{a}{b}"


def p4_labels() -> dict[str, str]:
    """Label -> facet name for P4.

    Colour class i consists of the facets {i, i+1} (label ``ib``) and
    {i+2, i+4} (label ``ia``), indices mod 5.
    """
    out = {}
    for i in range(1, 6):
        out[f"{i}b"] = _pair(i, i + 1)
        out[f"{i}a"] = _pair(i + 2, i + 4)
    return out


def p4_colour_classes() -> dict[str, int]:
    """Facet name -> colour 1..5 for the five-colouring of P4."""
    return {facet: int(label[0]) for label, facet in p4_labels().items()}


def p4_five_colouring(P: CombinatorialPolytope | None = None) -> Colouring:
    P = P or build_builtin("P4")
    return Colouring.from_labels(P, p4_colour_classes(), name="five")


def p4_rp4_colouring(P: CombinatorialPolytope | None = None) -> Colouring:
    """Rank-4 colouring: classes 1..4 get e_1..e_4, class 5 gets their sum."""
    P = P or build_builtin("P4")
    vec = {1: 1, 2: 2, 3: 4, 4: 8, 5: 15}
    classes = p4_colour_classes()
    return Colouring.from_vectors(P, 4, {f: vec[k] for f, k in classes.items()}, name="rp4")


def p3_colouring(P: CombinatorialPolytope | None = None) -> Colouring:
    """N_j gets colour j and S_j gets colour j+1 (mod 3)."""
    P = P or build_builtin("P3")
    labels = {}
    for j in (1, 2, 3):
        labels[f"N{j}"] = j
        labels[f"S{j}"] = j % 3 + 1
    return Colouring.from_labels(P, labels, name="three")


# right pentagon edge k carries the label r[k-1] of the left pentagon
RIGHT_ORDER = (1, 3, 5, 2, 4)


def pentagon_product_branched_colouring(P: CombinatorialPolytope | None = None) -> Colouring:
    """Rank-6 colouring giving the double branched cover of the five-torus link.

    Left edge i gets e_i; the right edge carrying the same label gets e_i + e_6.
    """
    P = P or build_builtin("pentagon_product")
    vecs = {}
    for i in range(1, 6):
        vecs[f"L{i}"] = gf2.basis_vector(i)
        vecs[f"R{i}"] = gf2.basis_vector(RIGHT_ORDER[i - 1]) | gf2.basis_vector(6)
    return Colouring.from_vectors(P, 6, vecs, name="branched")


def pentagon_product_surface_colouring(P: CombinatorialPolytope | None = None) -> Colouring:
    """Product of two three-colourings a,b,c,b,c of the pentagon (6 colours)."""
    P = P or build_builtin("pentagon_product")
    pattern = (1, 2, 3, 2, 3)
    labels = {}
    for i in range(1, 6):
        labels[f"L{i}"] = pattern[i - 1]
        labels[f"R{i}"] = pattern[i - 1] + 3
    return Colouring.from_labels(P, labels, name="surfaces")


def pentagon_product_red_pairs() -> list[tuple[str, str]]:
    """Pairs of edges with equal labels; their products are the red squares."""
    return [(f"L{RIGHT_ORDER[k - 1]}", f"R{k}") for k in range(1, 6)]


def torus_colouring(P: CombinatorialPolytope | None = None) -> Colouring:
    """Cube with opposite facets sharing a colour."""
    P = P or build_builtin("cube3")
    labels = {name: int(name[1]) for name in P.facet_names}
    return Colouring.from_labels(P, labels, name="torus")


LINK_GROUP_TEXT = """\
a b c d e
[a,[c,d]]
[b,[d,e]]
[c,[e,a]]
[d,[a,b]]
[e,[b,c]]
[a,[b^-1,e^-1]]
[b,[c^-1,a^-1]]
[c,[d^-1,b^-1]]
[d,[e^-1,c^-1]]
[e,[a^-1,d^-1]]
"""


BUILTIN_COLOURINGS = {
    ("P4", "five"): p4_five_colouring,
    ("P4", "rp4"): p4_rp4_colouring,
    ("P3", "three"): p3_colouring,
    ("pentagon_product", "branched"): pentagon_product_branched_colouring,
    ("pentagon_product", "surfaces"): pentagon_product_surface_colouring,
    ("cube3", "torus"): torus_colouring,
}

DEFAULT_COLOURING = {"P4": "five", "P3": "three", "pentagon_product": "branched",
                     "cube3": "torus"}


def builtin_colouring(polytope_name: str, name: str | None, P=None) -> Colouring:
    name = name or DEFAULT_COLOURING.get(polytope_name)
    maker = BUILTIN_COLOURINGS.get((polytope_name, name))
    if maker is None:
        raise ValueError(f"no builtin colouring {name!r} for {polytope_name}")
    return maker(P)
