"""Table of claims about the link and its manifolds, each with an exact check."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import cyclic, data, dehnfill, groups, symmetry
from .cover import QuotientComplex, cusps, descending_link, euler_and_volume, height, spine
from .homology import choi_park_betti, choi_park_terms, reduced_ranks
from .polytope import build_builtin, opposite_pairs, vertex_link


@dataclass
class Claim:
    key: str
    statement: str
    check: Callable[[], tuple[bool, str]]


@dataclass
class Outcome:
    key: str
    statement: str
    passed: bool
    detail: str
    seconds: float


def _eq(got, want) -> tuple[bool, str]:
    return got == want, f"got {got}, expected {want}"


# -- cached builders -------------------------------------------------------------

_cache: dict = {}


def _once(key, fn):
    if key not in _cache:
        _cache[key] = fn()
    return _cache[key]


def p4():
    return _once("P4", lambda: build_builtin("P4"))


def five():
    return _once("five", lambda: data.p4_five_colouring(p4()))


def p4_quotient():
    return _once("q", lambda: QuotientComplex(five()))


def p4_filling():
    return _once("fill", lambda: dehnfill.dehn_fill(p4(), five(), dehnfill.FillingChoice.uniform(p4())))


def p4_smoothed():
    return _once("smooth", lambda: dehnfill.smooth(p4_filling()))


def p4_cores():
    return _once("cores", lambda: dehnfill.core_components(p4_smoothed()))


def p3_fillings():
    def build():
        P = build_builtin("P3")
        c = data.p3_colouring(P)
        out = []
        for ch in dehnfill.all_choices(P):
            same = tuple(c.lam[a] == c.lam[b] for a, b in ch.values())
            fp = dehnfill.smooth(dehnfill.dehn_fill(P, c, ch))
            out.append((same, fp))
        return out
    return _once("p3", build)


def link_group():
    return _once("pres", groups.link_presentation)


def ideal():
    return _once("ideal", lambda: groups.alexander_ideal_generators(groups.alexander_matrix(link_group()), 4))


# -- checks ------------------------------------------------------------------------


def check_p4_structure():
    P = p4()
    return _eq((P.n_facets, len(P.real_vertices), len(P.ideal_vertices)), (10, 5, 5))


def check_p4_links():
    P = p4()
    c = five()
    counts = []
    for v in P.ideal_vertices:
        link = vertex_link(P, v)
        local = sorted(_bits(P.faces[v].facets))
        if link.f_vector() != (8, 12, 6):
            return False, f"link of vertex {v} is not a cube"
        same = sum(1 for a, b in opposite_pairs(link) if c.lam[local[a]] == c.lam[local[b]])
        counts.append(same)
    return _eq(counts, [1] * 5)


def _bits(mask):
    from .gf2 import bits
    return bits(mask)


def check_cover_cells():
    return _eq(p4_quotient().n_top, 32)


def check_euler_volume():
    return _eq(euler_and_volume(p4_quotient()), (2, Fraction(8, 3)))


def check_cusps():
    cs = cusps(p4_quotient())
    return _eq((len(cs), {x.section.betti for x in cs}, all(x.one_same_pair for x in cs)),
               (5, {(1, 3, 3, 1)}, True))


def check_spine_homology():
    return _eq(spine(p4_quotient()).homology().betti, (1, 5, 10, 4, 0))


def check_filling_polytope():
    fp = p4_filling()
    return _eq((dehnfill.recognize(fp.polytope), fp.polytope.n_facets,
                len(fp.polytope.vertices)), ("pentagon_product", 10, 25))


def check_smoothing():
    return _eq(dehnfill.recognize(p4_smoothed().polytope), "simplex(4)")


def check_filled_homology():
    return _eq(dehnfill.filled_manifold_homology(p4_smoothed()).betti, (1, 0, 0, 0, 1))


def check_filled_simply_connected():
    return _eq(dehnfill.FilledQuotient(p4_smoothed()).fundamental_group_trivial(), True)


def check_core_tori():
    cores = p4_cores()
    got = [(x.size, x.euler, x.orientable, x.closed, x.homology.betti) for x in cores]
    return _eq(got, [(16, 0, True, True, (1, 2, 1))] * 5)


def check_core_colours():
    cols = sorted(x.colours for x in p4_cores())
    return _eq(cols, [(1,), (2,), (4,), (8,), (16,)])


def check_p3_centre():
    for same, fp in p3_fillings():
        if not any(same):
            cores = dehnfill.core_components(fp)
            return _eq((dehnfill.recognize(fp.polytope), dehnfill.filled_manifold_homology(fp).betti,
                        len(cores)), ("cube3", (1, 3, 3, 1), 3))
    return False, "centre choice missing"


def check_p3_same():
    for same, fp in p3_fillings():
        if all(same):
            cores = dehnfill.core_components(fp)
            return _eq((dehnfill.recognize(fp.polytope), dehnfill.filled_manifold_homology(fp).betti,
                        len(cores)), ("suspension_of_triangle", (1, 0, 0, 1), 3))
    return False, "same-colour choice missing"


def check_p3_count():
    return _eq(len(p3_fillings()), 8)


def check_group_h1():
    return _eq(str(groups.abelianization(link_group())), "Z^5")


def check_alexander_matrix_shape():
    m = groups.alexander_matrix(link_group())
    return _eq((len(m), len(m[0])), (10, 5))


def check_minor_count():
    return _eq(ideal().total, 1050)


def check_ideal_predicate():
    ig = ideal()
    pred = groups.predicate_exponents()
    return _eq((ig.exponents == pred, len(pred)), (True, len(ig.generators)))


def check_alexander_polynomial():
    g = groups.laurent_gcd(ideal().generators)
    return _eq(str(g), "1")


def check_surgery_h1():
    return _eq(str(groups.surgery_quotient()[1]), "Z^5")


def check_relators_die():
    p = link_group()
    lons = groups.longitudes()
    ok = all(groups.trivial_modulo(r, lons, depth=8) is not None for r in p.relators[:5])
    return ok, "first five relators trivial modulo the longitudes" if ok else "search failed"


def check_rewriting():
    w1 = groups.LabelWord.parse("1b1a3b3a1a1b3a3b")
    d = groups.rewrite_equivalent(w1, groups.LabelWord.parse("1b3b1b3b"))
    return d.found, f"{len(d.moves)} moves"


def check_rewriting_commutes():
    x = groups.LabelWord.parse("1b3b1b3b")
    y = groups.LabelWord.parse("2a2b")
    d = groups.rewrite_equivalent(groups.label_commutator(x, y), groups.LabelWord(()))
    return d.found, f"{len(d.moves)} moves"


def check_cyclic_generic():
    return _eq(cyclic.b1_cyclic_cover((1, 1, 1, 1, 1)), 8)


def check_cyclic_p():
    got = [cyclic.b1_cyclic_cover((p, p, 1, 1, 1)) for p in (2, 3, 5, 7)]
    return _eq(got, [9, 10, 12, 14])


def check_cyclic_infinite():
    return _eq(cyclic.b1_cyclic_cover((0, 0, 1, 1, 1)), cyclic.INFINITY)


def check_cyclic_coprime():
    import itertools
    from math import gcd
    bad = []
    for phi in itertools.product(range(1, 7), repeat=5):
        if all(gcd(a, b) == 1 for a, b in itertools.combinations(phi, 2)):
            if cyclic.b1_cyclic_cover(phi) != 8:
                bad.append(phi)
    return not bad, f"{len(bad)} exceptions"


def check_b3():
    return _eq((cyclic.b3_cyclic_cover((1, 1, 1, 1, 1)), cyclic.b3_cyclic_cover((1, 1, 0, 1, 1))),
               (0, cyclic.INFINITY))


def check_group_orders():
    return _eq((len(symmetry.group_H()), len(symmetry.group_G())), (20, 640))


def check_transitivity():
    H = symmetry.group_H()
    return _eq([symmetry.transitivity_on_subsets(H, k)[0] for k in range(1, 6)], [True] * 5)


def check_borromean():
    B = symmetry.borromean_symmetries()
    transitive = symmetry.transitivity_on_subsets(B, 1, n=4)[1][0] >= 3
    return _eq((len(B), transitive), (48, True))


def check_quadric_points():
    r = symmetry.quadric_checks(1, 2)
    return _eq(r.listed_intersection_ok, True)


def check_critical_points():
    r = symmetry.quadric_checks(1, 2)
    labels = [c.label for c in r.critical]
    found = [f"{c.label} at {c.point}" for c in r.grid_critical]
    return r.listed_ok, f"listed points classified as {labels}; critical points found: {found}"


def check_quadric_family():
    return _eq(symmetry.quadric_checks(1, 2).preserved, True)


def check_branched():
    return _eq(choi_park_betti(data.pentagon_product_branched_colouring()).betti, (1, 0, 2, 0, 1))


def check_branched_terms():
    terms = choi_park_terms(data.pentagon_product_branched_colouring())
    shapes = sorted(tuple(sorted((k, b) for k, b in h.items() if b)) for _, h in terms
                    if any(h.values()))
    return _eq(shapes, [((-1, 1),), ((1, 1),), ((1, 1),), ((3, 1),)])


def check_descending_links():
    q = p4_quotient()
    by_f: dict[int, set] = {}
    for v in range(q.n_top):
        by_f.setdefault(height(v), set()).add(reduced_ranks(descending_link(q, v), 2))
    got = [sorted(by_f[f]) for f in range(1, 6)]
    want = [[(1, 0, 0)], [(0, 0, 0)], [(0, 1, 0)], [(0, 0, 0)], [(0, 0, 4)]]
    return _eq(got, want)


CLAIMS: list[Claim] = [
    Claim("P4.facets", "P4 has 10 facets, 5 real and 5 ideal vertices", check_p4_structure),
    Claim("P4.links", "each ideal vertex link is a cube with one same-coloured opposite pair", check_p4_links),
    Claim("cover.cells", "the manifold uses 32 copies of P4", check_cover_cells),
    Claim("cover.euler", "chi = 2 and volume 8/3 pi^2", check_euler_volume),
    Claim("cover.cusps", "5 cusps with 3-torus sections", check_cusps),
    Claim("cover.spine", "spine homology ranks 1,5,10,4,0", check_spine_homology),
    Claim("fill.polytope", "same-colour filling of P4 is the product of two pentagons", check_filling_polytope),
    Claim("fill.smoothed", "smoothing gives the 4-simplex", check_smoothing),
    Claim("fill.homology", "filled manifold has the homology of S^4", check_filled_homology),
    Claim("fill.pi1", "filled manifold has trivial edge-path group", check_filled_simply_connected),
    Claim("fill.cores", "5 core tori, 16 squares each", check_core_tori),
    Claim("fill.core_colours", "the i-th core torus carries colour e_i", check_core_colours),
    Claim("P3.choices", "8 filling choices for P3", check_p3_count),
    Claim("P3.centre", "centre choice gives the 3-torus and 3 red circles", check_p3_centre),
    Claim("P3.same", "same-colour choice gives S^3 and 3 red circles", check_p3_same),
    Claim("group.H1", "link group abelianizes to Z^5", check_group_h1),
    Claim("fox.matrix", "Alexander matrix is 10 x 5", check_alexander_matrix_shape),
    Claim("fox.minors", "1050 minors of size 4", check_minor_count),
    Claim("fox.ideal", "nonzero minors are exactly the predicate products", check_ideal_predicate),
    Claim("fox.delta", "Alexander polynomial is 1", check_alexander_polynomial),
    Claim("surgery.H1", "surgered group abelianizes to Z^5", check_surgery_h1),
    Claim("surgery.relators", "relators die modulo the longitudes", check_relators_die),
    Claim("rewrite.word", "1b1a3b3a1a1b3a3b is homotopic to 1b3b1b3b", check_rewriting),
    Claim("rewrite.commutes", "1b3b1b3b commutes with 2a2b", check_rewriting_commutes),
    Claim("cyclic.generic", "b1 = 8 for phi = (1,1,1,1,1)", check_cyclic_generic),
    Claim("cyclic.coprime", "b1 = 8 for pairwise coprime phi in [1,6]^5", check_cyclic_coprime),
    Claim("cyclic.p", "b1 = 7 + p for phi = (p,p,1,1,1)", check_cyclic_p),
    Claim("cyclic.zero", "b1 infinite when two entries vanish", check_cyclic_infinite),
    Claim("cyclic.b3", "b3 = 0 iff no entry vanishes", check_b3),
    Claim("sym.orders", "|H| = 20 and |G| = 640", check_group_orders),
    Claim("sym.transitive", "H is k-transitive for k = 1..5", check_transitivity),
    Claim("sym.borromean", "48 symmetries of the Borromean rings, transitive on components", check_borromean),
    Claim("sym.intersection", "Q1 and Q2 meet in (0,0,+-sqrt2/2,0,+-sqrt2/2)", check_quadric_points),
    Claim("sym.critical", "listed critical points of f on Q1 with their indices", check_critical_points),
    Claim("sym.family", "G permutes the quadrics", check_quadric_family),
    Claim("branched.betti", "branched double cover has Betti numbers 1,0,2,0,1", check_branched),
    Claim("branched.terms", "contributing K_omega are empty, S^1, S^1, S^3", check_branched_terms),
    Claim("morse.links", "descending links by height", check_descending_links),
]


def run_claims(claims=None, keys=None) -> list[Outcome]:
    out = []
    for claim in claims or CLAIMS:
        if keys and claim.key not in keys:
            continue
        start = time.perf_counter()
        try:
            ok, detail = claim.check()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"error: {exc!r}"
        out.append(Outcome(claim.key, claim.statement, bool(ok), detail,
                           time.perf_counter() - start))
    return out
