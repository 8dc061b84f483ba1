import pytest

from torilink import data
from torilink.colouring import Colouring
from torilink.cover import (QuotientComplex, cusps, descending_link, euler_and_volume, height,
                            spine)
from torilink.homology import reduced_ranks
from torilink.polytope import build_builtin, cube, polygon


@pytest.fixture(scope="module")
def q5():
    return QuotientComplex(data.p4_five_colouring())


def test_cell_counts(q5):
    assert q5.cell_counts() == (10, 120, 240, 160, 32)
    assert q5.euler() == 2


def test_spine_counts_and_homology(q5):
    s = spine(q5)
    assert s.counts == (32, 160, 240, 120, 10)
    h = s.homology()
    assert h.betti == (1, 5, 10, 4, 0)
    assert all(t == () for t in h.torsion)


def test_coordinate_and_propagated_signs_agree(q5):
    a = spine(q5, signs="coordinate").homology()
    b = spine(q5, signs="propagate").homology()
    assert a == b


def test_cusps_are_three_tori(q5):
    cs = cusps(q5)
    assert len(cs) == 5
    assert all(c.one_same_pair and c.orientable for c in cs)


def test_rp4_colouring_cover():
    q = QuotientComplex(data.p4_rp4_colouring())
    assert q.n_top == 16
    assert euler_and_volume(q)[0] == 1
    assert spine(q).counts == (16, 80, 120, 60, 5)
    for c in cusps(q):
        assert c.section.betti == (1, 2, 1, 0)
        assert c.section.torsion[1] == (2,)
        assert not c.orientable


def test_p3_manifold():
    q = QuotientComplex(data.p3_colouring())
    # a cusped 3-manifold has chi = 0, and three torus cusps force b2 = 2
    assert spine(q).homology().betti == (1, 3, 2, 0)
    assert all(c.section.betti == (1, 2, 1) for c in cusps(q))


def test_closed_small_covers():
    assert spine(QuotientComplex(data.torus_colouring(cube(3)))).homology().betti == (1, 3, 3, 1)
    P = polygon(5)
    # eight pentagons: orientable genus 2
    c = Colouring.from_labels(P, dict(zip(P.facet_names, (1, 2, 1, 2, 3))))
    assert spine(QuotientComplex(c)).homology().betti == (1, 4, 1)
    # four pentagons: non-orientable, chi = -1
    c = Colouring(P, 2, [1, 2, 1, 2, 3])
    h = spine(QuotientComplex(c)).homology()
    assert (h.betti, h.torsion[1]) == ((1, 2, 0), (2,))


def test_improper_colouring_rejected():
    P = polygon(4)
    with pytest.raises(ValueError):
        QuotientComplex(Colouring.from_labels(P, {n: 1 for n in P.facet_names}))


def test_descending_links(q5):
    seen = {}
    for v in range(q5.n_top):
        seen.setdefault(height(v), set()).add(reduced_ranks(descending_link(q5, v), 2))
    assert seen[0] == {(0, 0, 0)}
    assert seen[1] == {(1, 0, 0)}
    assert seen[3] == {(0, 1, 0)}
    assert seen[5] == {(0, 0, 4)}


def test_descending_links_need_basis_palette():
    with pytest.raises(ValueError):
        descending_link(QuotientComplex(data.p4_rp4_colouring()), 0)


def test_volume_only_in_dimension_four():
    with pytest.raises(ValueError):
        euler_and_volume(QuotientComplex(data.p3_colouring()))
