"""Unfolded boundary and its desingularization.

Each smooth crack arc is doubled, one copy per side of approach, and every
singular point is replaced by the vertices of the unfolded domain: one per
true conical point, one per crack cover (a single sector component), and one
for the no-crack part of a conical crack point.

The unfolded boundary is obtained by walking the sides of the boundary
segments with the domain on the left.  At a smooth point the walk passes
through; at a vertex it stops, and the stop becomes a collar end of the
desingularized boundary ``M``.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum

from .geometry import (
    BoundaryPointClass,
    GeometryError,
    LocalSector,
    Point2,
    PointKind,
    PointNotOnBoundary,
    PolygonalDomain,
    SectorSet,
    Skeleton,
    VertexCensus,
    _touch,
    census_from,
    classify_candidates,
    on_segment,
    split_conical_crack,
)

#: weight index (n - 1) / 2 of the boundary Sobolev spaces for planar domains
BOUNDARY_WEIGHT = 0.5


class VertexRole(str, Enum):
    TRUE_CONICAL = "TrueConical"
    CRACK_COVER = "CrackCover"
    NO_CRACK_PART = "NoCrackPart"


@dataclass(frozen=True)
class UnfoldedVertex:
    id: str
    base_point: Point2
    role: VertexRole
    sector: SectorSet
    origin: BoundaryPointClass

    @property
    def boundary_count(self) -> int:
        return self.sector.boundary_count()

    def is_crack_free(self) -> bool:
        secs = self.sector.sectors
        return not any(_touch(a, b) for i, a in enumerate(secs) for b in secs[i + 1:])


@dataclass(frozen=True)
class Side:
    """A boundary piece traversed with the domain on its left."""

    piece: int
    forward: bool


@dataclass(frozen=True)
class ArcEnd:
    vertex: str
    angle: float  # direction at the vertex, a point of the boundary of omega^u


@dataclass(frozen=True)
class UnfoldedArc:
    id: int
    points: tuple[Point2, ...]
    sides: tuple[Side, ...]
    start: ArcEnd | None
    end: ArcEnd | None
    on_crack: bool  # True when the arc is a one-sided copy of crack segments

    @property
    def closed(self) -> bool:
        return self.start is None

    @property
    def length(self) -> float:
        return sum(a.dist(b) for a, b in zip(self.points, self.points[1:]))

    def inward_normal(self) -> tuple[float, float]:
        """Unit normal of the first segment pointing to the side of approach."""
        a, b = self.points[0], self.points[1]
        dx, dy = b.x - a.x, b.y - a.y
        n = math.hypot(dx, dy)
        return (-dy / n, dx / n)


@dataclass(frozen=True)
class UnfoldedDomain:
    domain: PolygonalDomain
    census: VertexCensus
    arcs: tuple[UnfoldedArc, ...]
    vertex_set: tuple[UnfoldedVertex, ...]
    skeleton: Skeleton
    point_vertices: Mapping[int, tuple[str, ...]]
    point_sectors: Mapping[int, int]

    def vertex(self, vid: str) -> UnfoldedVertex:
        for v in self.vertex_set:
            if v.id == vid:
                return v
        raise KeyError(vid)


def _owner_map(sk: Skeleton, classified):
    """Assign each (point, sector index) to an unfolded vertex id, or None for smooth points."""
    owners: dict[tuple[int, int], str] = {}
    vertices: list[UnfoldedVertex] = []
    n_true = n_crack = 0
    for pi, secs, cls in classified:
        p = sk.points[pi]
        ss = SectorSet(tuple(s.sector for s in secs))
        if cls.kind in (PointKind.SMOOTH_NON_CRACK, PointKind.SMOOTH_CRACK):
            continue
        if cls.kind == PointKind.TRUE_CONICAL_NON_CRACK:
            n_true += 1
            vid = f"p{n_true}"
            vertices.append(UnfoldedVertex(vid, p, VertexRole.TRUE_CONICAL, ss, cls))
            for k in range(len(secs)):
                owners[(pi, k)] = vid
            continue
        n_crack += 1
        if cls.kind == PointKind.CONICAL_CRACK:
            split = split_conical_crack(ss)
            free = set(split.no_crack_part.sectors)
        else:
            free = set()
        h = 0
        for k, ls in enumerate(secs):
            if ls.sector in free:
                continue
            h += 1
            vid = f"c{n_crack}.{h}"
            vertices.append(UnfoldedVertex(vid, p, VertexRole.CRACK_COVER, SectorSet((ls.sector,)), cls))
            owners[(pi, k)] = vid
        if free:
            vid = f"c{n_crack}.0"
            part = tuple(ls.sector for ls in secs if ls.sector in free)
            vertices.append(UnfoldedVertex(vid, p, VertexRole.NO_CRACK_PART, SectorSet(part), cls))
            for k, ls in enumerate(secs):
                if ls.sector in free:
                    owners[(pi, k)] = vid
    return owners, vertices


def unfold_boundary(d: PolygonalDomain, census: VertexCensus | None = None) -> UnfoldedDomain:
    sk, classified = classify_candidates(d)
    if census is None:
        census = census_from(sk, classified)
    owners, vertices = _owner_map(sk, classified)
    local: dict[int, list[LocalSector]] = {pi: secs for pi, secs, _ in classified}

    # sector at the head of a side: the one whose end ray runs back along the side
    def head(side: Side) -> int:
        pc = sk.pieces[side.piece]
        return pc.i1 if side.forward else pc.i0

    def tail(side: Side) -> int:
        pc = sk.pieces[side.piece]
        return pc.i0 if side.forward else pc.i1

    def arriving_sector(side: Side) -> tuple[int, int]:
        q = head(side)
        outward = not side.forward
        for k, ls in enumerate(local[q]):
            if ls.end_ray.piece == side.piece and ls.end_ray.outward == outward:
                return q, k
        raise GeometryError(f"no sector closes side {side}")  # malformed skeleton

    def start_side(q: int, k: int) -> Side:
        r = local[q][k].start_ray
        return Side(r.piece, r.outward)

    sides = []
    for k, pc in enumerate(sk.pieces):
        sides.append(Side(k, True))
        if pc.is_crack:
            sides.append(Side(k, False))
    visited: set[Side] = set()
    arcs: list[UnfoldedArc] = []

    def walk(first: Side, start: ArcEnd | None):
        chain = [first]
        pts = [sk.points[tail(first)], sk.points[head(first)]]
        visited.add(first)
        cur = first
        while True:
            q, k = arriving_sector(cur)
            vid = owners.get((q, k))
            if vid is not None:
                end = ArcEnd(vid, local[q][k].sector.end)
                break
            nxt = start_side(q, k)
            if nxt == first:
                end = None
                pts.pop()
                break
            chain.append(nxt)
            visited.add(nxt)
            pts.append(sk.points[head(nxt)])
            cur = nxt
        on_crack = all(sk.pieces[s.piece].is_crack for s in chain)
        arcs.append(UnfoldedArc(len(arcs), tuple(pts), tuple(chain), start, end, on_crack))

    for pi, secs, _ in classified:
        for k, ls in enumerate(secs):
            vid = owners.get((pi, k))
            if vid is None:
                continue
            walk(start_side(pi, k), ArcEnd(vid, ls.sector.start))
    for s in sides:
        if s not in visited:
            walk(s, None)

    point_vertices: dict[int, tuple[str, ...]] = {}
    for (pi, _), vid in owners.items():
        point_vertices[pi] = tuple(sorted(set(point_vertices.get(pi, ())) | {vid}))
    point_sectors = {pi: len(secs) for pi, secs, _ in classified}
    return UnfoldedDomain(d, census, tuple(arcs), tuple(vertices), sk, point_vertices, point_sectors)


def covering_multiplicity(u: UnfoldedDomain, p: Point2 | tuple[float, float]) -> int:
    """Number of preimages of a boundary point in the unfolded boundary and vertex set."""
    p = p if isinstance(p, Point2) else Point2(*p)
    sk = u.skeleton
    pi = sk.find_point(p)
    if pi is not None:
        if pi in u.point_vertices:
            return len(u.point_vertices[pi])
        return u.point_sectors[pi]
    total = 0
    for pc in sk.pieces:
        if on_segment(p, sk.points[pc.i0], sk.points[pc.i1]):
            total += 2 if pc.is_crack else 1
    if total == 0:
        raise PointNotOnBoundary(f"{p} is not on the boundary")
    return total


@dataclass(frozen=True)
class UnfoldedCensus:
    l: int  # noqa: E741
    m: int
    m_prime: int
    alpha: int


def unfolded_census(u: UnfoldedDomain) -> UnfoldedCensus:
    """Census of the unfolded domain: every vertex is a crack-free conical point."""
    cracked = sum(1 for v in u.vertex_set if not v.is_crack_free())
    return UnfoldedCensus(len(u.vertex_set) - cracked, cracked, 0, 0)


# ---------------------------------------------------------------------------
# desingularization


@dataclass(frozen=True)
class CollarEnd:
    vertex: str
    angle: float
    epsilon: float


@dataclass(frozen=True)
class MArc:
    """Component of ``M``: an interval, a circle, or a half-line for straight cones."""

    id: int
    kind: str  # 'interval', 'circle' or 'ray'
    start: CollarEnd | None
    end: CollarEnd | None
    smooth_length: float

    @property
    def collar_ends(self) -> tuple[CollarEnd, ...]:
        return tuple(c for c in (self.start, self.end) if c is not None)


@dataclass(frozen=True)
class DesingularizedBoundary:
    arcs: tuple[MArc, ...]
    vertices: tuple[UnfoldedVertex, ...]
    weight: float = BOUNDARY_WEIGHT

    @property
    def collars(self) -> tuple[CollarEnd, ...]:
        return tuple(c for a in self.arcs for c in a.collar_ends)

    @property
    def infinity_markers(self) -> tuple[tuple[str, float, int, str], ...]:
        """``(vertex, direction, arc id, end)`` for every collar.

        Both sides of a crack tip share vertex and direction; the arc end tells them apart.
        """
        out = []
        for a in self.arcs:
            for which, c in (("start", a.start), ("end", a.end)):
                if c is not None:
                    out.append((c.vertex, c.angle, a.id, which))
        return tuple(out)

    def collar_count(self, vid: str) -> int:
        return sum(1 for c in self.collars if c.vertex == vid)


def _default_epsilon(u: UnfoldedDomain) -> dict[str, float]:
    sk = u.skeleton
    shortest: dict[str, float] = {}
    for arc in u.arcs:
        for end, side in ((arc.start, arc.sides[0]), (arc.end, arc.sides[-1])):
            if end is None:
                continue
            pc = sk.pieces[side.piece]
            L = sk.points[pc.i0].dist(sk.points[pc.i1])
            shortest[end.vertex] = min(shortest.get(end.vertex, math.inf), L)
    return {v: min(1.0, 0.5 * L) for v, L in shortest.items()}


def desingularize(
    u: UnfoldedDomain, epsilon: float | Mapping[str, float] | None = None
) -> DesingularizedBoundary:
    """Cut the unfolded boundary at the vertices and attach collars ``[0, eps_v)``.

    ``epsilon`` defaults to ``min(1, half the shortest incident edge)`` per
    vertex; a float or a per-vertex mapping overrides it.
    """
    default = _default_epsilon(u)
    if epsilon is None:
        eps = default
    elif isinstance(epsilon, Mapping):
        eps = {**default, **epsilon}
    else:
        eps = {v: float(epsilon) for v in default}
    for v, e in eps.items():
        if not 0.0 < e <= default[v]:
            raise GeometryError(f"collar length {e} for {v} must lie in (0, {default[v]:.9g}]")
    arcs = []
    for arc in u.arcs:
        if arc.closed:
            arcs.append(MArc(arc.id, "circle", None, None, arc.length))
            continue
        s = CollarEnd(arc.start.vertex, arc.start.angle, eps[arc.start.vertex])
        e = CollarEnd(arc.end.vertex, arc.end.angle, eps[arc.end.vertex])
        arcs.append(MArc(arc.id, "interval", s, e, arc.length - s.epsilon - e.epsilon))
    return DesingularizedBoundary(tuple(arcs), u.vertex_set)


def straight_cone(sectors: SectorSet, epsilon: float = 0.5) -> DesingularizedBoundary:
    """Desingularized boundary ``[0, inf) x boundary(omega)`` of an infinite cone.

    Each boundary direction of ``omega`` carries one half-line with one collar.
    """
    sectors.validate()
    v = UnfoldedVertex("v", Point2(0.0, 0.0), VertexRole.TRUE_CONICAL, sectors,
                       BoundaryPointClass(PointKind.TRUE_CONICAL_NON_CRACK, 0))
    arcs = []
    for s in sectors.sectors:
        for angle in (s.start, s.end):
            arcs.append(MArc(len(arcs), "ray", CollarEnd("v", angle, epsilon), None, math.inf))
    return DesingularizedBoundary(tuple(arcs), (v,))


def wedge(theta: float) -> DesingularizedBoundary:
    """Infinite wedge of opening ``theta``."""
    return straight_cone(SectorSet.from_pairs([(0.0, theta)]))
