"""One test per acceptance criterion.  Each prints a PASS/FAIL line."""

import itertools
import random
from fractions import Fraction
from math import gcd

import pytest

from torilink import cyclic, data, dehnfill, groups, symmetry
from torilink.cover import QuotientComplex, cusps, descending_link, euler_and_volume, height, spine
from torilink.gf2 import bits
from torilink.homology import (choi_park_betti, choi_park_terms, rational_rank, reduced_ranks,
                               smith_normal_form)
from torilink.laurent import LaurentPolynomial, variables
from torilink.polytope import build_builtin, opposite_pairs, vertex_link

from _enumerate import proper_colourings, random_word


@pytest.fixture
def report(capsys):
    def _report(number, title, failures):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {status}: {title}")
            for f in failures:
                print(f"    {f}")
        assert not failures, failures
    return _report


def expect(failures, label, got, want):
    if got != want:
        failures.append(f"{label}: got {got!r}, expected {want!r}")


@pytest.fixture(scope="module")
def p4():
    return build_builtin("P4")


@pytest.fixture(scope="module")
def five(p4):
    return data.p4_five_colouring(p4)


def test_criterion_01_polytope_combinatorics(report, p4, five):
    bad = []
    expect(bad, "facets", p4.n_facets, 10)
    expect(bad, "real vertices", len(p4.real_vertices), 5)
    expect(bad, "ideal vertices", len(p4.ideal_vertices), 5)
    for v in p4.ideal_vertices:
        link = vertex_link(p4, v)
        expect(bad, f"link {v} f-vector", link.f_vector(), (8, 12, 6))
        local = list(bits(p4.faces[v].facets))
        same = [(a, b) for a, b in opposite_pairs(link)
                if five.lam[local[a]] == five.lam[local[b]]]
        expect(bad, f"same-coloured pairs at {v}", len(same), 1)
    report(1, "P4 face lattice and ideal vertex links", bad)


def test_criterion_02_cover_invariants(report, five):
    bad = []
    q = QuotientComplex(five)
    expect(bad, "top cells", q.n_top, 32)
    expect(bad, "chi and volume", euler_and_volume(q), (2, Fraction(8, 3)))
    cs = cusps(q)
    expect(bad, "cusps", len(cs), 5)
    expect(bad, "cusp sections", {c.section.betti for c in cs}, {(1, 3, 3, 1)})
    expect(bad, "spine homology", spine(q).homology().betti, (1, 5, 10, 4, 0))
    report(2, "manifold from 32 copies of P4", bad)


def test_criterion_03_dehn_filling(report, p4, five):
    bad = []
    fp = dehnfill.dehn_fill(p4, five, dehnfill.FillingChoice.uniform(p4))
    expect(bad, "filled type", dehnfill.recognize(fp.polytope), "pentagon_product")
    expect(bad, "filled facets", fp.polytope.n_facets, 10)
    expect(bad, "filled vertices", len(fp.polytope.vertices), 25)
    sm = dehnfill.smooth(fp)
    expect(bad, "smoothed type", dehnfill.recognize(sm.polytope), "simplex(4)")
    expect(bad, "filled homology", dehnfill.filled_manifold_homology(sm).betti, (1, 0, 0, 0, 1))
    cores = dehnfill.core_components(sm)
    expect(bad, "core components", len(cores), 5)
    expect(bad, "core shapes", [(c.size, c.euler, c.orientable) for c in cores],
           [(16, 0, True)] * 5)
    report(3, "same-colour filling of P4", bad)


def test_criterion_04_three_dimensional_fillings(report):
    bad = []
    P = build_builtin("P3")
    c = data.p3_colouring(P)
    choices = dehnfill.all_choices(P)
    expect(bad, "choices", len(choices), 8)
    seen = {}
    for ch in choices:
        same = tuple(c.lam[a] == c.lam[b] for a, b in ch.values())
        fp = dehnfill.smooth(dehnfill.dehn_fill(P, c, ch))
        h = dehnfill.filled_manifold_homology(fp)
        seen[same] = (dehnfill.recognize(fp.polytope), h.betti, len(dehnfill.core_components(fp)))
    expect(bad, "processed", len(seen), 8)
    expect(bad, "centre choice", seen.get((False,) * 3), ("cube3", (1, 3, 3, 1), 3))
    expect(bad, "same-colour choice", seen.get((True,) * 3),
           ("suspension_of_triangle", (1, 0, 0, 1), 3))
    report(4, "all filling choices of P3", bad)


def _expected_alexander_matrix():
    """Reference matrix with entries sign * t^unit * (t_i - 1)(t_j - 1)."""
    t = variables(5)

    def e(sign, unit, i, j):
        u = LaurentPolynomial.constant(5, sign)
        for k in unit:
            u = u * LaurentPolynomial.variable(k, 5, -1)
        return u * (t[i - 1] - 1) * (t[j - 1] - 1)

    Z = LaurentPolynomial.zero(5)
    return [
        [Z, Z, e(-1, (), 4, 1), e(1, (), 3, 1), Z],
        [Z, Z, Z, e(-1, (), 5, 2), e(1, (), 4, 2)],
        [e(1, (), 5, 3), Z, Z, Z, e(-1, (), 3, 1)],
        [e(-1, (), 4, 2), e(1, (), 4, 1), Z, Z, Z],
        [Z, e(-1, (), 5, 3), e(1, (), 5, 2), Z, Z],
        [Z, e(-1, (2, 5), 5, 1), Z, Z, e(1, (2, 5), 2, 1)],
        [e(1, (1, 3), 3, 2), Z, e(-1, (1, 3), 2, 1), Z, Z],
        [Z, e(1, (2, 4), 4, 3), Z, e(-1, (2, 4), 3, 2), Z],
        [Z, Z, e(1, (3, 5), 5, 4), Z, e(-1, (3, 5), 4, 3)],
        [e(-1, (1, 4), 5, 4), Z, Z, e(1, (1, 4), 5, 1), Z],
    ]


def test_criterion_05_fox_calculus(report):
    bad = []
    p = groups.link_presentation()
    m = groups.alexander_matrix(p)
    want = _expected_alexander_matrix()
    for i, j in itertools.product(range(10), range(5)):
        if m[i][j].normalize() != want[i][j].normalize():
            bad.append(f"entry ({i + 1},{j + 1}) differs up to units")
        elif m[i][j] != want[i][j]:
            bad.append(f"entry ({i + 1},{j + 1}) differs by a unit")
    ig = groups.alexander_ideal_generators(m, 4)
    expect(bad, "minors", ig.total, 1050)
    pred = groups.predicate_exponents()
    expect(bad, "exponents not in predicate", sorted(ig.exponents - pred), [])
    expect(bad, "predicate not realized", sorted(pred - ig.exponents), [])
    expect(bad, "gcd", str(groups.laurent_gcd(ig.generators)), "1")
    report(5, "Alexander matrix, minors and ideal", bad)


def test_criterion_06_cyclic_covers(report):
    bad = []
    for phi in itertools.product(range(1, 7), repeat=5):
        if all(gcd(a, b) == 1 for a, b in itertools.combinations(phi, 2)):
            if cyclic.b1_cyclic_cover(phi) != 8:
                bad.append(f"b1{phi} = {cyclic.b1_cyclic_cover(phi)}")
    for p in (2, 3, 5, 7):
        expect(bad, f"b1 at ({p},{p},1,1,1)", cyclic.b1_cyclic_cover((p, p, 1, 1, 1)), 7 + p)
    for zeros in itertools.combinations(range(5), 2):
        phi = [1, 2, 3, 5, 7]
        for z in zeros:
            phi[z] = 0
        expect(bad, f"b1{tuple(phi)}", cyclic.b1_cyclic_cover(phi), cyclic.INFINITY)
    mismatches = [phi for phi in itertools.product(range(-4, 5), repeat=5)
                  if cyclic.delta_phi_degree(phi) != cyclic.oracle_degree(phi)]
    expect(bad, "shortcut vs gcd oracle", mismatches[:5], [])
    report(6, "Betti numbers of infinite cyclic covers", bad)


def test_criterion_07_symmetry(report):
    bad = []
    H = symmetry.group_H()
    expect(bad, "|H|", len(H), 20)
    for k in range(1, 6):
        expect(bad, f"H transitive on {k}-subsets", symmetry.transitivity_on_subsets(H, k)[0], True)
    expect(bad, "|G|", len(symmetry.group_G()), 640)
    expect(bad, "Borromean order", len(symmetry.borromean_symmetries()), 48)
    r = symmetry.quadric_checks(1, 2)
    expect(bad, "intersection points", r.listed_intersection_ok, True)
    for chk, label in zip(r.critical, symmetry.LISTED_LABELS):
        expect(bad, f"critical point {chk.point}", chk.label, label)
    report(7, "symmetry groups and exact quadric checks", bad)


def test_criterion_08_branched_cover(report):
    bad = []
    c = data.pentagon_product_branched_colouring()
    expect(bad, "Betti numbers", choi_park_betti(c).betti, (1, 0, 2, 0, 1))
    nonzero = sorted(tuple(sorted((k, b) for k, b in h.items() if b))
                     for _, h in choi_park_terms(c) if any(h.values()))
    # empty complex, two circles, one 3-sphere
    expect(bad, "contributing K_omega", nonzero, [((-1, 1),), ((1, 1),), ((1, 1),), ((3, 1),)])
    report(8, "double branched cover over the pentagon product", bad)


def test_criterion_09_descending_links(report, five):
    bad = []
    q = QuotientComplex(five)
    by_f = {}
    for v in range(q.n_top):
        by_f.setdefault(height(v), set()).add(reduced_ranks(descending_link(q, v), 2))
    want = {1: (1, 0, 0), 2: (0, 0, 0), 3: (0, 1, 0), 4: (0, 0, 0), 5: (0, 0, 4)}
    for f, ranks in want.items():
        expect(bad, f"f = {f}", by_f.get(f), {ranks})
    report(9, "descending links of the height function", bad)


def test_criterion_10_property_suites(report):
    bad = []
    rng = random.Random(20240605)
    t = variables(5)
    for _ in range(1000):
        w = random_word(rng, 5)
        lhs = LaurentPolynomial.zero(5)
        for g in range(5):
            lhs = lhs + groups.fox_derivative(w, g, 5) * (t[g] - 1)
        if lhs != groups.abelianize(w, 5) - 1:
            bad.append(f"Fox identity fails for {w}")
            break

    for _ in range(200):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        A = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        factors, rank = smith_normal_form(A)
        if rank != rational_rank(A) or any(b % a for a, b in zip(factors, factors[1:])):
            bad.append(f"SNF of {A} gave {factors}")
            break

    for name in ("triangle", "square", "cube3"):
        P = build_builtin(name)
        for c in proper_colourings(P, range(P.dim, P.n_facets + 1)):
            direct = spine(QuotientComplex(c)).homology().betti
            if choi_park_betti(c).betti != direct:
                bad.append(f"{name} {c.lam}: formula disagrees with {direct}")

    colours = groups.p4_label_colours()
    adjacent = groups.p4_label_adjacency()
    labels = sorted(colours)
    for _ in range(300):
        w = tuple(rng.choice(labels) for _ in range(rng.randint(0, 12)))
        start = groups.path_endpoint(groups.LabelWord(w), colours)
        for _ in range(10):
            moves = list(groups._neighbours(w, adjacent))
            if not moves:
                break
            _, _, w = rng.choice(moves)
            if groups.path_endpoint(groups.LabelWord(w), colours) != start:
                bad.append(f"move changed the endpoint of {w}")
    report(10, "property suites", bad)
