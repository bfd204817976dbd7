import math

import pytest
from shapely.geometry import LineString, MultiLineString, Point, Polygon
from shapely.ops import linemerge

from layerpot import geometry as g
from layerpot.geometry import PolygonalDomain, SectorSet, vertex_census
from layerpot.unfold import (
    VertexRole, covering_multiplicity, desingularize, straight_cone, unfold_boundary,
    unfolded_census, wedge,
)

PI = math.pi


def passes(d: PolygonalDomain, p, delta=1e-5, radius=1e-2) -> int:
    """Times the boundary of the crack-thickened domain runs through a small ball around ``p``.

    Each pass is one side from which the boundary point is approached, so it
    counts the cover points of ``p`` in the unfolded boundary.
    """
    shape = Polygon([tuple(q) for q in d.outer_boundary], [[tuple(q) for q in h] for h in d.holes])
    for crack in d.cracks:
        shape = shape.difference(LineString([tuple(q) for q in crack]).buffer(delta))
    rings = [shape.exterior, *shape.interiors]
    ball = Point(*p).buffer(radius, 256)
    count = 0
    for ring in rings:
        piece = LineString(ring.coords).intersection(ball)
        if piece.is_empty:
            continue
        if isinstance(piece, MultiLineString):
            # the ring's start may fall inside the ball and split one pass in two
            piece = linemerge(piece)
        count += len(piece.geoms) if isinstance(piece, MultiLineString) else 1
    return count


def corner_crack():
    return PolygonalDomain(g.unit_square().outer_boundary, cracks=(((0, 0), (0.5, 0.5)),))


def edge_crack():
    return PolygonalDomain(g.unit_square().outer_boundary, cracks=(((0.5, 0), (0.5, 0.5)),))


def interior_crack():
    return PolygonalDomain(g.unit_square().outer_boundary, cracks=(((0.3, 0.5), (0.7, 0.5)),))


DOMAINS = {
    "square": g.unit_square,
    "lshape": g.l_shape,
    "disk": g.disk,
    "slit_disk": g.slit_disk,
    "corner_crack": corner_crack,
    "edge_crack": edge_crack,
    "interior_crack": interior_crack,
}


@pytest.mark.parametrize("name", sorted(DOMAINS))
def test_vertex_count_matches_thickening_oracle(name):
    d = DOMAINS[name]()
    census = vertex_census(d)
    u = unfold_boundary(d, census)
    singular = [c.point for c in census.true_conical_non_crack + census.singular_cracks]
    assert len(u.vertex_set) == sum(passes(d, p) for p in singular)
    assert len(u.vertex_set) == census.l + census.m_prime + census.alpha


def test_square_is_identity_cover():
    u = unfold_boundary(g.unit_square())
    assert len(u.arcs) == 4 and len(u.vertex_set) == 4
    assert all(v.role is VertexRole.TRUE_CONICAL for v in u.vertex_set)
    assert covering_multiplicity(u, (0.5, 0)) == 1


def test_disk_has_no_vertices():
    u = unfold_boundary(g.disk())
    assert len(u.vertex_set) == 0
    assert len(u.arcs) == 1 and u.arcs[0].closed
    assert covering_multiplicity(u, (1, 0)) == 1


def test_slit_disk_unfolding():
    d = g.slit_disk()
    u = unfold_boundary(d)
    assert len(u.vertex_set) == 3
    tip = [v for v in u.vertex_set if v.base_point == g.Point2(0, 0)]
    assert len(tip) == 1 and abs(tip[0].sector.measure - 2 * PI) < 1e-9
    junction = [v for v in u.vertex_set if v.base_point == g.Point2(1, 0)]
    assert len(junction) == 2
    assert all(len(v.sector) == 1 for v in junction)
    assert covering_multiplicity(u, (0, 0)) == passes(d, (0, 0)) == 1
    assert covering_multiplicity(u, (1, 0)) == passes(d, (1, 0)) == 2
    assert covering_multiplicity(u, (0.5, 0)) == passes(d, (0.5, 0)) == 2
    assert covering_multiplicity(u, (0, 1)) == 1


def test_unfolded_vertices_are_crack_free():
    for make in DOMAINS.values():
        u = unfold_boundary(make())
        assert all(v.is_crack_free() for v in u.vertex_set)
        assert unfolded_census(u).m == 0


@pytest.mark.parametrize("name,intervals,collars", [
    ("square", 4, 8), ("lshape", 6, 12), ("slit_disk", 3, 6), ("disk", 0, 0),
])
def test_desingularized_boundary(name, intervals, collars):
    u = unfold_boundary(DOMAINS[name]())
    m = desingularize(u)
    assert sum(a.kind == "interval" for a in m.arcs) == intervals
    assert len(m.collars) == collars
    assert sum(v.boundary_count for v in m.vertices) == collars
    assert collars % 2 == 0
    assert len(set(m.infinity_markers)) == len(m.infinity_markers) == collars
    for v in m.vertices:
        assert m.collar_count(v.id) == v.boundary_count
    assert all(a.smooth_length >= 0 for a in m.arcs)


def test_slit_disk_tip_gets_two_collars():
    u = unfold_boundary(g.slit_disk())
    m = desingularize(u)
    tip = next(v for v in u.vertex_set if v.base_point == g.Point2(0, 0))
    assert m.collar_count(tip.id) == 2


def test_collar_length_is_validated():
    u = unfold_boundary(g.unit_square())
    assert desingularize(u, 0.25).collars[0].epsilon == 0.25
    with pytest.raises(g.GeometryError):
        desingularize(u, 0.0)
    with pytest.raises(g.GeometryError):
        desingularize(u, 0.75)


def test_straight_cones():
    m = wedge(PI / 2)
    assert [a.kind for a in m.arcs] == ["ray", "ray"]
    assert all(len(a.collar_ends) == 1 for a in m.arcs)
    three = straight_cone(SectorSet.from_pairs([(0, 1), (2, 3), (4, 5)]))
    assert len(three.arcs) == 6 and three.vertices[0].boundary_count == 6
