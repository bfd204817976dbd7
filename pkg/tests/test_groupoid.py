import itertools

import pytest

from layerpot import geometry as g
from layerpot.geometry import PolygonalDomain, vertex_census
from layerpot.groupoid import (
    ConeBase, UnknownStratum, abstract_groupoid, build_groupoid, equivalent, indicial_summands,
    is_b_groupoid, restrict,
)
from layerpot.unfold import desingularize, unfold_boundary, wedge


def groupoid_of(d):
    return build_groupoid(desingularize(unfold_boundary(d)))


def family():
    """Ten domains with vertex counts 0, 3, 4, 5, 6 and repeats."""
    sq = g.unit_square().outer_boundary
    return [
        g.unit_square(),
        g.unit_square().transformed(0.7, (2, 1)),
        PolygonalDomain(((0, 0), (3, 0), (3, 1), (0, 1))),
        g.l_shape(),
        PolygonalDomain(g.regular_polygon(5)),
        PolygonalDomain(g.regular_polygon(6)),
        g.slit_disk(),
        g.disk(),
        PolygonalDomain(((0, 0), (1, 0), (0, 1))),
        PolygonalDomain(sq, cracks=(((0, 0), (0.5, 0.5)),)),
    ]


def test_square_strata():
    grp = groupoid_of(g.unit_square())
    assert grp.vertex_count == 4
    assert all(s.k == 2 for s in grp.vertex_strata)
    assert grp.amenable and grp.algebroid_tag == "b-tangent bundle of M"


def test_wedge_has_one_stratum():
    grp = build_groupoid(wedge(1.0))
    assert grp.vertex_count == 1 and grp.vertex_strata[0].k == 2
    assert [s.algebra for s in indicial_summands(grp)] == ["M_2(C0(R+))"]


def test_slit_disk_strata():
    grp = groupoid_of(g.slit_disk())
    assert grp.vertex_count == 3 and all(s.k == 2 for s in grp.vertex_strata)


def test_restrict():
    grp = groupoid_of(g.unit_square())
    assert restrict(grp, "interior").descriptor == "pair groupoid M0 x M0"
    vid = grp.vertex_strata[0].vertex_id
    assert restrict(grp, vid).descriptor == f"P_2 x (R+ x {{{vid}}})"
    whole = restrict(grp, "boundary")
    assert len(whole.parts) == 4 and whole.descriptor.count("|_|") == 3
    with pytest.raises(UnknownStratum):
        restrict(grp, "nowhere")


def test_indicial_summands():
    assert [s.algebra for s in indicial_summands(groupoid_of(g.unit_square()))] == ["M_2(C0(R+))"] * 4
    abstract = abstract_groupoid([ConeBase(1), ConeBase(3, positive_dimensional=False)])
    assert [s.algebra for s in indicial_summands(abstract)] == ["K (x) C0(R+)", "M_3(C0(R+))"]


def test_b_groupoid_predicate():
    for d in family():
        grp = groupoid_of(d)
        if grp.vertex_count:
            assert not is_b_groupoid(grp)
    connected = abstract_groupoid([ConeBase(1, 1, True)])
    assert is_b_groupoid(connected)
    assert all(s.k == 1 for s in indicial_summands(connected))
    assert not is_b_groupoid(abstract_groupoid([ConeBase(1), ConeBase(2)]))


def test_zero_vertex_domain_is_pair_groupoid():
    grp = groupoid_of(g.disk())
    assert grp.is_pair_groupoid and grp.vertex_count == 0


def test_strata_count_matches_census():
    for d in family():
        c = vertex_census(d)
        assert groupoid_of(d).vertex_count == c.l + c.m_prime + c.alpha


def test_equivalence_is_an_equivalence_relation():
    gs = [groupoid_of(d) for d in family()]
    for a in gs:
        assert equivalent(a, a)
    for a, b in itertools.product(gs, repeat=2):
        assert equivalent(a, b) == equivalent(b, a)
    for a, b, c in itertools.product(gs, repeat=3):
        if equivalent(a, b) and equivalent(b, c):
            assert equivalent(a, c)


def test_equivalence_examples():
    assert equivalent(groupoid_of(g.unit_square()), groupoid_of(PolygonalDomain(((0, 0), (3, 0), (3, 1), (0, 1)))))
    assert not equivalent(groupoid_of(g.unit_square()), groupoid_of(g.slit_disk()))


def test_cone_base_validation():
    with pytest.raises(ValueError):
        ConeBase(0)
