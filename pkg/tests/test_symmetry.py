from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from torilink import symmetry
from torilink.symmetry import QSqrt2, SignedPermutation

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
field = st.builds(QSqrt2, rationals, rationals)


@pytest.fixture(scope="module")
def G():
    return symmetry.group_G()


def test_orders(G):
    H = symmetry.group_H()
    assert len(H) == 20 and len(G) == 640
    ident = SignedPermutation.identity(5)
    assert ident in H and ident in G
    assert all(640 % g.order() == 0 for g in G)


def test_index_action_of_G_is_H(G):
    assert symmetry.index_action(G) == symmetry.index_action(symmetry.group_H())


def test_transitivity():
    H = symmetry.group_H()
    for k in range(1, 6):
        ok, sizes = symmetry.transitivity_on_subsets(H, k)
        assert ok
    assert symmetry.transitivity_on_subsets(H, 2)[1] == [10]
    C5 = symmetry.closure([SignedPermutation.from_cycles(5, [(1, 2, 3, 4, 5)])])
    assert symmetry.transitivity_on_subsets(C5, 2) == (False, [5, 5])
    with pytest.raises(ValueError):
        symmetry.transitivity_on_subsets(H, 0)


def test_borromean_group():
    B = symmetry.borromean_symmetries()
    assert len(B) == 48
    assert all(g.signs[3] == g.permutation_sign() for g in B)
    assert all(g.perm[3] == 3 for g in B)
    assert sorted(symmetry.transitivity_on_subsets(B, 1, n=4)[1]) == [1, 3]


@given(st.sampled_from(sorted(symmetry.group_G(), key=lambda g: (g.perm, g.signs))),
       st.sampled_from(sorted(symmetry.group_G(), key=lambda g: (g.perm, g.signs))))
def test_group_law(g, h):
    x = (1, 2, 3, 4, 5)
    assert (g * h).apply(x) == g.apply(h.apply(x))
    assert (g * g.inverse()) == SignedPermutation.identity(5)


@given(field, field, field)
def test_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a


@given(field)
def test_exact_sign(a):
    approx = float(a.a) + float(a.b) * 2 ** 0.5
    if abs(approx) > 1e-9:
        assert a.sign() == (1 if approx > 0 else -1)
    assert (a * a).sign() >= 0


def test_sqrt():
    assert QSqrt2.sqrt(Fraction(1, 2)) == QSqrt2(0, Fraction(1, 2))
    assert QSqrt2.sqrt(Fraction(9, 4)) == QSqrt2(Fraction(3, 2))
    assert QSqrt2.sqrt(3) is None


def test_quadric_intersection_points():
    pts = symmetry.quadric_intersection(1, 2)
    assert set(pts) == set(symmetry.LISTED_INTERSECTION_12)
    for i in range(1, 6):
        for j in range(1, 6):
            if i != j:
                for p in symmetry.quadric_intersection(i, j):
                    assert symmetry.on_sphere(p)
                    assert symmetry.on_quadric(p, i) and symmetry.on_quadric(p, j)


def test_extremes_of_height_function():
    lo = symmetry.check_critical((0, -Fraction(1, 2), -Fraction(1, 2), -Fraction(1, 2), -Fraction(1, 2)))
    hi = symmetry.check_critical((0, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
    assert (lo.label, hi.label) == ("minimum", "maximum")


def test_grid_search_finds_four_critical_points():
    found = symmetry.grid_critical_points(1)
    labels = sorted(c.label for c in found)
    assert labels == ["maximum", "minimum", "saddle", "saddle"]
    h = Fraction(1, 2)
    saddles = {c.point for c in found if c.label == "saddle"}
    assert saddles == {symmetry.point(0, h, -h, -h, h), symmetry.point(0, -h, h, h, -h)}


def test_listed_saddles_fail_the_lagrange_test():
    # this sign pattern does not satisfy the Lagrange condition
    for p in symmetry.LISTED_CRITICAL_POINTS[1:3]:
        chk = symmetry.check_critical(p)
        assert chk.on_surface and not chk.critical


def test_off_surface_point():
    assert not symmetry.check_critical((1, 0, 0, 0, 0)).on_surface


def test_G_permutes_quadrics(G):
    assert all(symmetry.quadric_pair_preserved(g, i) for g in G for i in range(1, 6))
