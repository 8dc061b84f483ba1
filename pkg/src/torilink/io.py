"""Loading polytopes, colourings, filling choices and presentations from files
or builtin names."""

from __future__ import annotations

import json
from pathlib import Path

from .colouring import Colouring
from .data import LINK_GROUP_TEXT, builtin_colouring
from .groups import Presentation, parse_presentation
from .polytope import CombinatorialPolytope, build_builtin


def _is_file(source: str) -> bool:
    return Path(source).is_file()


def load_polytope(source: str) -> CombinatorialPolytope:
    """A JSON file path or a builtin name such as ``P4`` or ``cube(3)``."""
    if _is_file(source):
        data = json.loads(Path(source).read_text())
        return CombinatorialPolytope.from_dict(data, name=data.get("name") or Path(source).stem)
    return build_builtin(source)


def load_colouring(P: CombinatorialPolytope, source: str | None) -> Colouring:
    """A JSON file path, a builtin colouring name, or None for the default of P."""
    if source and _is_file(source):
        return Colouring.from_dict(P, json.loads(Path(source).read_text()))
    if P.name is None:
        raise ValueError("a colouring file is needed for this polytope")
    return builtin_colouring(P.name, source, P)


def load_choice(P: CombinatorialPolytope, source: str):
    """``same-colour`` or a JSON file mapping each ideal vertex (as a list of its
    facet names joined by commas) to a pair of facet names or ``same-colour``."""
    from .dehnfill import SAME_COLOUR, FillingChoice
    if source == SAME_COLOUR:
        return FillingChoice.uniform(P)
    if not _is_file(source):
        raise ValueError(f"filling choice must be {SAME_COLOUR!r} or a file")
    raw = json.loads(Path(source).read_text())
    out = FillingChoice()
    for key, value in raw.items():
        mask = P.mask_of(n.strip() for n in key.split(","))
        matches = [v for v in P.ideal_vertices if P.faces[v].facets == mask]
        if len(matches) != 1:
            raise ValueError(f"{key!r} is not an ideal vertex")
        if value == SAME_COLOUR:
            out[matches[0]] = SAME_COLOUR
        else:
            out[matches[0]] = tuple(P.facet_index(n) for n in value)
    return out


# names accepted for the builtin five-generator link group
BUILTIN_PRESENTATIONS = ("link", "ivansic")


def load_presentation(source: str) -> Presentation:
    if source in BUILTIN_PRESENTATIONS and not _is_file(source):
        return parse_presentation(LINK_GROUP_TEXT)
    return parse_presentation(Path(source).read_text())
