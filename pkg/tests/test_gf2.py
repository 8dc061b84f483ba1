from hypothesis import given, strategies as st

from torilink import gf2

vectors = st.lists(st.integers(min_value=0, max_value=(1 << 6) - 1), max_size=8)


def test_basis_vector_is_one_based():
    assert gf2.basis_vector(1) == 1
    assert gf2.basis_vector(6) == 32


def test_bits_roundtrip():
    assert list(gf2.bits(0b10110)) == [1, 2, 4]
    assert gf2.from_bits(gf2.to_bits(0b1011, 4)) == 0b1011


@given(vectors)
def test_rank_bounded_by_count_and_width(vs):
    r = gf2.rank(vs)
    assert r <= len(vs) and r <= 6
    assert gf2.independent(vs) == (r == len(vs) and 0 not in vs)


@given(vectors, st.integers(min_value=0, max_value=63))
def test_reduce_is_idempotent_and_stays_in_coset(vs, v):
    basis = gf2.echelon(vs)
    r = gf2.reduce(v, basis)
    assert gf2.reduce(r, basis) == r
    # v - r lies in the span
    assert gf2.rank(list(vs) + [v ^ r]) == gf2.rank(vs)


@given(vectors, st.integers(min_value=0, max_value=63))
def test_solve_returns_a_solution_when_one_exists(rows, x):
    rhs = [gf2.dot(r, x) for r in rows]
    y = gf2.solve(rows, rhs)
    assert y is not None
    assert [gf2.dot(r, y) for r in rows] == rhs


def test_solve_detects_inconsistency():
    assert gf2.solve([1, 1], [0, 1]) is None
