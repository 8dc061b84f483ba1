import random

import pytest
from hypothesis import given, settings, strategies as st

from torilink.homology import (ChainComplex, SimplicialComplex, homology, rational_rank,
                               reduced_homology, smith_normal_form, to_sparse)

small_ints = st.integers(min_value=-6, max_value=6)
matrices = st.integers(min_value=1, max_value=6).flatmap(
    lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=1, max_size=6))


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == ((1, 6), 2)
    assert smith_normal_form([[2, 4], [4, 8]]) == ((2,), 1)
    assert smith_normal_form([[0, 0]]) == ((), 0)


@given(matrices)
def test_snf_rank_matches_rational_oracle(A):
    factors, r = smith_normal_form(A)
    assert r == rational_rank(A) == len(factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    assert all(f > 0 for f in factors)


@settings(deadline=None)
@given(matrices)
def test_snf_determinant_for_square_matrices(A):
    import sympy
    if len(A) != len(A[0]):
        return
    factors, r = smith_normal_form(A)
    det = abs(int(sympy.Matrix(A).det()))
    prod = 1
    for f in factors:
        prod *= f
    assert det == (prod if r == len(A) else 0)


def test_snf_accepts_sparse_input():
    A = [[0, 2, 0], [3, 0, 0]]
    assert smith_normal_form(to_sparse(A)) == smith_normal_form(A)


def test_boundary_squared_must_vanish():
    with pytest.raises(ValueError):
        ChainComplex([1, 1, 1], {1: {0: {0: 1}}, 2: {0: {0: 1}}})


def test_real_projective_plane():
    # minimal triangulation on 6 vertices
    faces = [(0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 5), (0, 4, 5),
             (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 3, 4), (3, 4, 5)]
    K = SimplicialComplex(faces)
    h = homology(K.chain_complex())
    assert h.betti == (1, 0, 0)
    assert h.torsion[1] == (2,)


def test_reduced_homology_of_spheres_and_empty():
    assert reduced_homology(SimplicialComplex([])) == {-1: 1}
    circle = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    assert {k: b for k, b in reduced_homology(circle).items() if b} == {1: 1}
    two_points = SimplicialComplex([(0,), (1,)])
    assert {k: b for k, b in reduced_homology(two_points).items() if b} == {0: 1}


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
def test_join_of_spheres_is_a_sphere(a, b):
    def sphere(n, offset):
        verts = range(offset, offset + n + 2)
        return SimplicialComplex([tuple(v for v in verts if v != w) for w in verts])
    J = sphere(a - 1, 0).join(sphere(b - 1, 100))
    ranks = {k: r for k, r in reduced_homology(J).items() if r}
    assert ranks == {a + b - 1: 1}


def test_random_complexes_euler_matches_betti():
    rng = random.Random(7)
    for _ in range(30):
        faces = [tuple(sorted(rng.sample(range(7), rng.randint(1, 4)))) for _ in range(6)]
        K = SimplicialComplex(faces)
        assert homology(K.chain_complex()).euler() == K.euler()
