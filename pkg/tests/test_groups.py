import random

import pytest
from hypothesis import given, settings, strategies as st

from torilink import groups
from torilink.groups import LabelWord, Word, commutator, parse_presentation, parse_word
from torilink.laurent import LaurentPolynomial, variables

letters = st.lists(st.tuples(st.integers(0, 4), st.sampled_from([1, -1])), max_size=16)


@pytest.fixture(scope="module")
def pres():
    return groups.link_presentation()


def test_presentation_shape(pres):
    assert pres.generators == ("a", "b", "c", "d", "e")
    assert len(pres.relators) == 10
    n = len(pres.generators)
    assert all(r.exponent_sums(n) == [0] * n for r in pres.relators)


def test_parser_expands_commutators():
    names = ["x", "y"]
    assert parse_word("[x,y]", names) == parse_word("x y x^-1 y^-1", names)
    assert parse_word("x^3", names) == parse_word("x x x", names)
    with pytest.raises(ValueError):
        parse_word("z", names)


def test_presentation_file_format():
    p = parse_presentation("x y\n[x,y]\n")
    assert groups.abelianization(p).free_rank == 2


def test_abelianization(pres):
    ab = groups.abelianization(pres)
    assert (ab.free_rank, ab.torsion) == (5, ())


def test_kill_generators(pres):
    q = groups.kill_generators(pres, "abc")
    assert q.generators == ("d", "e") and q.relators == ()
    q = groups.kill_generators(pres, "ab")
    assert len(q.relators) == 1


def test_surgery_quotient_h1():
    _, ab = groups.surgery_quotient()
    assert (ab.free_rank, ab.torsion) == (5, ())


def test_first_relators_die_modulo_longitudes(pres):
    lons = groups.longitudes()
    for r in pres.relators[:5]:
        assert groups.trivial_modulo(r, lons, depth=8) is not None


@given(letters)
def test_reduction_and_inverse(ls):
    w = Word(ls)
    assert (w.reduce() == w.reduce().reduce())
    assert Word(list(w.letters) + list(w.inverse().letters)).reduce().is_empty()


@settings(max_examples=300)
@given(letters)
def test_fundamental_fox_identity(ls):
    w = Word(ls)
    t = variables(5)
    total = LaurentPolynomial.zero(5)
    for g in range(5):
        total = total + groups.fox_derivative(w, g, 5) * (t[g] - 1)
    assert total == groups.abelianize(w, 5) - 1


def test_fox_base_rules():
    one = LaurentPolynomial.constant(1)
    t = LaurentPolynomial.variable(1, 1)
    assert groups.fox_derivative(Word.gen(0), 0, 1) == one
    assert groups.fox_derivative(Word.gen(0, -1), 0, 1) == -(t ** -1)


def test_commutator_fox_derivative():
    x, y = Word.gen(0), Word.gen(1)
    t1, t2 = variables(2)
    assert groups.fox_derivative(commutator(x, y), 0, 2) == 1 - t2


def test_ideal_predicate_examples():
    assert groups.ideal_predicate((2, 2, 2, 1, 1))
    assert not groups.ideal_predicate((1, 0, 1, 3, 3))
    assert not groups.ideal_predicate((0, 0, 4, 4, 0))
    assert len(groups.predicate_exponents()) == 160


def test_alexander_polynomial_of_a_nested_commutator():
    # d/dx = (t1-1)(1-t2), d/dy = (t1-1)^2, so the gcd is t1 - 1
    p = parse_presentation("x y\n[x,[x,y]]\n")
    t1, _ = variables(2)
    assert groups.alexander_polynomial(p) == (t1 - 1).normalize()


def test_rewriting_examples():
    d = groups.rewrite_equivalent(LabelWord.parse("1a1a"), LabelWord(()))
    assert d.found and [m.kind for m in d.moves] == ["cancel"]
    d = groups.rewrite_equivalent(LabelWord.parse("1b1a3b3a1a1b3a3b"), LabelWord.parse("1b3b1b3b"))
    assert d.found
    x, y = LabelWord.parse("1b3b1b3b"), LabelWord.parse("2a2b")
    assert groups.rewrite_equivalent(groups.label_commutator(x, y), LabelWord(())).found


def test_rewriting_respects_endpoints():
    d = groups.rewrite_equivalent(LabelWord.parse("1a"), LabelWord(()))
    assert not d.found


def test_random_moves_preserve_endpoint():
    rng = random.Random(3)
    colours = groups.p4_label_colours()
    adj = groups.p4_label_adjacency()
    labels = sorted(colours)
    for _ in range(200):
        w = tuple(rng.choice(labels) for _ in range(10))
        end = groups.path_endpoint(LabelWord(w), colours)
        for kind, i, u in groups._neighbours(w, adj):
            assert groups.path_endpoint(LabelWord(u), colours) == end
