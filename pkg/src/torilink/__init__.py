"""Coloured right-angled polytopes, the manifolds they build, combinatorial
Dehn filling, and the invariants of the resulting five-torus link."""

from .colouring import Colouring, is_proper, orientable, validate
from .cover import QuotientComplex, cusps, spine
from .dehnfill import dehn_fill, recognize, smooth
from .groups import alexander_matrix, alexander_polynomial, link_presentation
from .homology import choi_park_betti, homology, smith_normal_form
from .polytope import CombinatorialPolytope, build_builtin

__version__ = "0.1.0"

__all__ = [
    "Colouring", "CombinatorialPolytope", "QuotientComplex", "alexander_matrix",
    "alexander_polynomial", "build_builtin", "choi_park_betti", "cusps", "dehn_fill",
    "homology", "is_proper", "link_presentation", "orientable", "recognize",
    "smith_normal_form", "smooth", "spine", "validate",
]
