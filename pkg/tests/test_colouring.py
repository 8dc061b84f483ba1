import json

import pytest
from hypothesis import given, strategies as st

from torilink import data
from torilink.colouring import Colouring, colour_automorphisms, is_proper, orientable, validate
from torilink.polytope import build_builtin, cube, p4, polygon


def test_five_colouring_is_proper_and_orientable():
    c = data.p4_five_colouring()
    assert is_proper(c)
    assert orientable(c)
    assert c.is_basis_palette()


def test_rp4_colouring_is_proper():
    c = data.p4_rp4_colouring()
    assert c.rank == 4
    assert validate(c) == []


def test_p4_labels_partition_the_facets():
    labels = data.p4_labels()
    assert sorted(labels.values()) == sorted(p4().facet_names)


def test_adjacent_same_colour_is_a_violation():
    P = polygon(4)
    c = Colouring.from_labels(P, {n: 1 for n in P.facet_names})
    bad = validate(c)
    assert bad and not is_proper(c)


def test_torus_colouring_of_the_cube():
    c = data.torus_colouring(cube(3))
    assert is_proper(c) and orientable(c)


def test_non_orientable_square_colouring():
    # Klein bottle: (e1, e2, e1, e1+e2)
    P = polygon(4)
    c = Colouring(P, 2, [1, 2, 1, 3])
    assert is_proper(c)
    assert not orientable(c)


facet_choices = st.lists(st.integers(min_value=1, max_value=15), min_size=10, max_size=10)


@given(facet_choices, st.integers(min_value=0, max_value=9))
def test_erasing_a_colour_never_creates_violations(lam, k):
    P = p4()
    full = Colouring(P, 4, lam)
    partial = Colouring(P, 4, [None if i == k else v for i, v in enumerate(lam)])
    assert len(validate(partial)) <= len(validate(full))


def test_json_roundtrip():
    c = data.p4_five_colouring()
    back = Colouring.from_dict(c.polytope, json.loads(c.to_json()))
    assert back.lam == c.lam and back.rank == c.rank


def test_unknown_facet_in_file():
    with pytest.raises(ValueError):
        Colouring.from_dict(p4(), {"rank": 5, "99": [1]})


def test_p4_colour_automorphisms():
    autos = colour_automorphisms(data.p4_five_colouring())
    assert len(autos) == 20
    cycles = {tuple(a.colour_cycles()) for a in autos}
    assert ((1, 2, 3, 4, 5),) in cycles
    assert ((2, 3, 5, 4),) in cycles


def test_restricted_to_link_is_a_cube_colouring():
    c = data.p4_five_colouring()
    P = c.polytope
    lc = c.restricted_to_link(P.ideal_vertices[0]).reduced()
    assert lc.polytope.f_vector() == (8, 12, 6)
    # one repeated pair, so five distinct basis colours survive
    assert lc.rank == 5
