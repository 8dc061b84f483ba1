from hypothesis import given, strategies as st

from torilink import laurent as lp
from torilink.laurent import LaurentPolynomial

exps = st.tuples(*[st.integers(min_value=-2, max_value=2)] * 3)
polys = st.dictionaries(exps, st.integers(min_value=-4, max_value=4), max_size=5).map(
    lambda d: LaurentPolynomial(3, d))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@given(polys)
def test_normalize_is_idempotent(p):
    assert p.normalize().normalize() == p.normalize()


@given(polys, exps, st.sampled_from([1, -1]))
def test_normalize_ignores_units(p, e, s):
    unit = LaurentPolynomial.monomial(e, s)
    assert (p * unit).normalize() == p.normalize()


def test_negative_power_of_unit():
    t = LaurentPolynomial.variable(1, 2)
    assert t ** -2 * t ** 2 == LaurentPolynomial.constant(2)


def test_substitute_to_one_variable():
    t1, t2 = lp.variables(2)
    p = (t1 - 1) * (t2 - 1)
    q = p.substitute((2, 3))
    assert lp.to_coeffs(q) == [1, 0, -1, -1, 0, 1]


def test_poly_gcd_of_cyclotomic_products():
    a = [-1, 0, 0, 0, 0, 0, 1]   # t^6 - 1
    b = [-1, 0, 0, 0, 1]         # t^4 - 1
    assert lp.degree(lp.poly_gcd(a, b)) == 2
    assert lp.gcd_many([[2, 4], [3, 6]]) in ([1, 2], [-1, -2])


def trimmed(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5),
       st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_exact_division_undoes_multiplication(a, b):
    if not any(b):
        return
    prod = lp.poly_mul(a, b)
    if not any(prod):
        return
    q = lp.poly_divmod_exact(prod, b)
    assert trimmed(lp.poly_mul(q, b)) == trimmed(prod)
    assert lp.degree(q) == lp.degree(prod) - lp.degree(b)
