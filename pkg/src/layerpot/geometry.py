"""Planar conical domains with ramified cracks.

A domain is an outer polygon (counterclockwise), optional holes (clockwise)
and crack polylines lying in the closed region.  Every boundary point ``p``
has a local cone basis ``omega_p``: the set of directions at ``p`` that point
into the domain, stored as a :class:`SectorSet` of open arcs of the circle.

Sector extraction is exact local combinatorics: the segments incident to
``p`` are turned into rays, sorted by angle, and the rays bound the arcs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-9
#: distance below which two points are the same point
POINT_TOL = 1e-9


class GeometryError(ValueError):
    pass


class PointNotOnBoundary(GeometryError):
    pass


class PointOutside(GeometryError):
    pass


class InvalidSectorSet(GeometryError):
    pass


class NotACrackPoint(GeometryError):
    pass


class InvalidDomain(GeometryError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "invalid domain")


# ---------------------------------------------------------------------------
# angles


def normalize_angle(a: float) -> float:
    """Reduce ``a`` to [0, 2pi), snapping values within tolerance of 2pi to 0."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI - ANGLE_TOL:
        a = 0.0
    return a


def angles_equal(a: float, b: float) -> bool:
    d = abs(normalize_angle(a) - normalize_angle(b))
    return d < ANGLE_TOL or d > TWO_PI - ANGLE_TOL


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite coordinate in ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def __sub__(self, other: "Point2") -> tuple[float, float]:
        return (self.x - other.x, self.y - other.y)

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def __str__(self) -> str:
        return f"({self.x:.9g}, {self.y:.9g})"


def as_points(coords: Iterable) -> tuple[Point2, ...]:
    """Accept Point2 objects or (x, y) pairs."""
    out = []
    for c in coords:
        out.append(c if isinstance(c, Point2) else Point2(float(c[0]), float(c[1])))
    return tuple(out)


@dataclass(frozen=True)
class AngularSector:
    """Open arc ``(start, start + length)`` of the unit circle."""

    start: float
    length: float

    def __post_init__(self):
        if not (0.0 <= self.start < TWO_PI):
            raise InvalidSectorSet(f"sector start {self.start} not in [0, 2pi)")
        if not (0.0 < self.length <= TWO_PI + ANGLE_TOL):
            raise InvalidSectorSet(f"sector length {self.length} not in (0, 2pi]")

    @classmethod
    def between(cls, start: float, end: float) -> "AngularSector":
        """Arc running counterclockwise from ``start`` to ``end``."""
        length = (end - start) % TWO_PI
        if length < ANGLE_TOL:
            length = TWO_PI
        return cls(normalize_angle(start), min(length, TWO_PI))

    @property
    def end(self) -> float:
        return normalize_angle(self.start + self.length)

    def rotated(self, angle: float) -> "AngularSector":
        return AngularSector(normalize_angle(self.start + angle), self.length)

    def contains(self, angle: float) -> bool:
        rel = (angle - self.start) % TWO_PI
        return ANGLE_TOL < rel < self.length - ANGLE_TOL

    def same_arc(self, other: "AngularSector") -> bool:
        return angles_equal(self.start, other.start) and abs(self.length - other.length) < ANGLE_TOL

    def __str__(self) -> str:
        return f"({self.start:.9g}, {self.start + self.length:.9g})"


def _touch(a: AngularSector, b: AngularSector) -> bool:
    """True when the closures of two distinct arcs share an endpoint."""
    return angles_equal(a.end, b.start) or angles_equal(b.end, a.start)


@dataclass(frozen=True)
class SectorSet:
    sectors: tuple[AngularSector, ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.sectors, key=lambda s: (s.start, s.length)))
        object.__setattr__(self, "sectors", ordered)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]]) -> "SectorSet":
        """Build from ``(start, end)`` pairs with ``end`` measured counterclockwise."""
        return cls(tuple(AngularSector.between(a, b) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.sectors)

    def __iter__(self):
        return iter(self.sectors)

    @property
    def measure(self) -> float:
        return sum(s.length for s in self.sectors)

    def rotated(self, angle: float) -> "SectorSet":
        return SectorSet(tuple(s.rotated(angle) for s in self.sectors))

    def same_arcs(self, other: "SectorSet") -> bool:
        if len(self) != len(other):
            return False
        rest = list(other.sectors)
        for s in self.sectors:
            match = next((o for o in rest if s.same_arc(o)), None)
            if match is None:
                return False
            rest.remove(match)
        return True

    def boundary_count(self) -> int:
        """Number of endpoints, counting the two sides of a full-turn arc separately."""
        return 2 * len(self.sectors)

    def validate(self) -> None:
        if not self.sectors:
            raise InvalidSectorSet("empty sector set")
        if self.measure > TWO_PI + ANGLE_TOL:
            raise InvalidSectorSet("sectors cover more than the full circle")
        secs = self.sectors
        for i, a in enumerate(secs):
            for b in secs[i + 1:]:
                if _overlap(a, b):
                    raise InvalidSectorSet(f"sectors {a} and {b} overlap")

    def __str__(self) -> str:
        return " u ".join(str(s) for s in self.sectors) or "{}"


def _overlap(a: AngularSector, b: AngularSector) -> bool:
    rel = (b.start - a.start) % TWO_PI
    if rel < ANGLE_TOL or rel > TWO_PI - ANGLE_TOL:
        return True
    # b starts inside a, or a starts inside b
    return rel < a.length - ANGLE_TOL or (TWO_PI - rel) < b.length - ANGLE_TOL


class PointKind(str, Enum):
    SMOOTH_NON_CRACK = "SmoothNonCrack"
    SMOOTH_CRACK = "SmoothCrack"
    TRUE_CONICAL_NON_CRACK = "TrueConicalNonCrack"
    INNER_CRACK = "InnerCrack"
    OUTER_CRACK = "OuterCrack"
    CONICAL_CRACK = "ConicalCrack"
    ARTIFICIAL_VERTEX = "ArtificialVertex"

    @property
    def is_crack(self) -> bool:
        return self in _CRACK_KINDS


_CRACK_KINDS = {
    PointKind.SMOOTH_CRACK,
    PointKind.INNER_CRACK,
    PointKind.OUTER_CRACK,
    PointKind.CONICAL_CRACK,
}


@dataclass(frozen=True)
class BoundaryPointClass:
    kind: PointKind
    ramification: int = 0

    def __str__(self) -> str:
        if self.kind.is_crack:
            return f"{self.kind.value}(k={self.ramification})"
        return self.kind.value


@dataclass(frozen=True)
class SectorSplit:
    no_crack_part: SectorSet
    crack_part: SectorSet


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PolygonalDomain:
    """Outer polygon, holes and crack polylines.

    ``smooth_outer`` / ``smooth_holes`` mark loops that discretize a smooth
    closed curve: their vertices are smooth boundary points whose tangent is
    the chord through the two neighbouring vertices.
    """

    outer_boundary: tuple[Point2, ...]
    holes: tuple[tuple[Point2, ...], ...] = ()
    cracks: tuple[tuple[Point2, ...], ...] = ()
    smooth_outer: bool = False
    smooth_holes: tuple[bool, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "outer_boundary", as_points(self.outer_boundary))
        object.__setattr__(self, "holes", tuple(as_points(h) for h in self.holes))
        object.__setattr__(self, "cracks", tuple(as_points(c) for c in self.cracks))
        sh = tuple(bool(s) for s in self.smooth_holes)
        if sh and len(sh) != len(self.holes):
            raise GeometryError("smooth_holes must have one flag per hole")
        object.__setattr__(self, "smooth_holes", sh or tuple(False for _ in self.holes))

    def loops(self) -> list[tuple[tuple[Point2, ...], bool]]:
        out = [(self.outer_boundary, self.smooth_outer)]
        out.extend(zip(self.holes, self.smooth_holes))
        return out

    def transformed(self, angle: float = 0.0, shift: tuple[float, float] = (0.0, 0.0)) -> "PolygonalDomain":
        """Rigid motion: rotate about the origin, then translate."""
        c, s = math.cos(angle), math.sin(angle)

        def move(pts):
            return tuple(Point2(c * p.x - s * p.y + shift[0], s * p.x + c * p.y + shift[1]) for p in pts)

        return PolygonalDomain(
            move(self.outer_boundary),
            tuple(move(h) for h in self.holes),
            tuple(move(k) for k in self.cracks),
            self.smooth_outer,
            self.smooth_holes,
        )


# ---------------------------------------------------------------------------
# planar primitives


def _cross(ax, ay, bx, by) -> float:
    return ax * by - ay * bx


def signed_area(pts: Sequence[Point2]) -> float:
    n = len(pts)
    return 0.5 * sum(_cross(pts[i].x, pts[i].y, pts[(i + 1) % n].x, pts[(i + 1) % n].y) for i in range(n))


def _point_segment_param(p: Point2, a: Point2, b: Point2) -> tuple[float, float]:
    """Parameter of the projection of ``p`` on ``ab`` and the distance to the segment."""
    dx, dy = b.x - a.x, b.y - a.y
    L2 = dx * dx + dy * dy
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2
    tc = min(1.0, max(0.0, t))
    return t, math.hypot(a.x + tc * dx - p.x, a.y + tc * dy - p.y)


def on_segment(p: Point2, a: Point2, b: Point2, tol: float = POINT_TOL) -> bool:
    return _point_segment_param(p, a, b)[1] < tol


def segment_intersections(a: Point2, b: Point2, c: Point2, d: Point2, tol: float = POINT_TOL):
    """Intersection of segments ab and cd.

    Returns ``(points, collinear_overlap)``: the list of intersection points
    (one point for a crossing or touching, the overlap endpoints for collinear
    segments) and whether the segments overlap along a positive length.
    """
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    denom = _cross(rx, ry, sx, sy)
    qpx, qpy = c.x - a.x, c.y - a.y
    lr = math.hypot(rx, ry)
    ls = math.hypot(sx, sy)
    if abs(denom) <= 1e-12 * lr * ls:
        if abs(_cross(qpx, qpy, rx, ry)) / lr > tol:
            return [], False
        # collinear: project c, d on ab
        t0 = (qpx * rx + qpy * ry) / (lr * lr)
        t1 = ((d.x - a.x) * rx + (d.y - a.y) * ry) / (lr * lr)
        lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
        if hi * lr < lo * lr - tol:
            return [], False
        p_lo = Point2(a.x + lo * rx, a.y + lo * ry)
        p_hi = Point2(a.x + hi * rx, a.y + hi * ry)
        if (hi - lo) * lr <= tol:
            return [p_lo], False
        return [p_lo, p_hi], True
    t = _cross(qpx, qpy, sx, sy) / denom
    u = _cross(qpx, qpy, rx, ry) / denom
    et, eu = tol / lr, tol / ls
    if -et <= t <= 1 + et and -eu <= u <= 1 + eu:
        t = min(1.0, max(0.0, t))
        return [Point2(a.x + t * rx, a.y + t * ry)], False
    return [], False


def _loop_edges(pts: Sequence[Point2]):
    n = len(pts)
    return [(pts[i], pts[(i + 1) % n]) for i in range(n)]


def _polygon_is_simple(pts: Sequence[Point2]) -> bool:
    edges = _loop_edges(pts)
    n = len(edges)
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            hits, overlap = segment_intersections(*edges[i], *edges[j])
            if overlap:
                return False
            if not hits:
                continue
            if not adjacent:
                return False
            shared = edges[i][1] if j == i + 1 else edges[i][0]
            if any(h.dist(shared) > POINT_TOL for h in hits):
                return False
    return True


def point_in_polygon(p: Point2, pts: Sequence[Point2]) -> str:
    """Return 'inside', 'boundary' or 'outside' (even-odd rule)."""
    inside = False
    for a, b in _loop_edges(pts):
        if on_segment(p, a, b):
            return "boundary"
        if (a.y > p.y) != (b.y > p.y):
            xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if xint > p.x:
                inside = not inside
    return "inside" if inside else "outside"


def region_membership(d: PolygonalDomain, p: Point2) -> str:
    """'inside', 'boundary' or 'outside' for the polygonal region (cracks ignored)."""
    where = point_in_polygon(p, d.outer_boundary)
    if where != "inside":
        return where
    for h in d.holes:
        wh = point_in_polygon(p, h)
        if wh == "boundary":
            return "boundary"
        if wh == "inside":
            return "outside"
    return "inside"


# ---------------------------------------------------------------------------
# skeleton: segments split at candidate points


@dataclass(frozen=True)
class _Segment:
    a: Point2
    b: Point2
    loop: int | None  # loop index, or None for crack segments
    crack: int | None  # crack polyline index
    index: int  # position within its loop / polyline


@dataclass(frozen=True)
class Piece:
    """Part of a segment between two consecutive candidate points.

    ``i0 -> i1`` follows the orientation of the original segment.
    """

    segment: int
    i0: int
    i1: int
    is_crack: bool


@dataclass(frozen=True)
class Ray:
    angle: float
    piece: int
    outward: bool  # True when the point is the piece's i0 endpoint
    role: str  # 'crack', 'loop_out' or 'loop_in'


@dataclass(frozen=True)
class LocalSector:
    sector: AngularSector
    start_ray: Ray
    end_ray: Ray


@dataclass
class Skeleton:
    domain: PolygonalDomain
    segments: list[_Segment]
    points: list[Point2]
    pieces: list[Piece]
    incident: dict[int, list[int]] = field(default_factory=dict)
    problems: list[str] = field(default_factory=list)

    def find_point(self, p: Point2) -> int | None:
        for i, q in enumerate(self.points):
            if q.dist(p) < POINT_TOL:
                return i
        return None


def _segments(d: PolygonalDomain) -> list[_Segment]:
    segs = []
    for li, (pts, _) in enumerate(d.loops()):
        for k, (a, b) in enumerate(_loop_edges(pts)):
            segs.append(_Segment(a, b, li, None, k))
    for ci, crack in enumerate(d.cracks):
        for k in range(len(crack) - 1):
            segs.append(_Segment(crack[k], crack[k + 1], None, ci, k))
    return segs


def _add_point(points: list[Point2], p: Point2) -> int:
    for i, q in enumerate(points):
        if q.dist(p) < POINT_TOL:
            return i
    points.append(p)
    return len(points) - 1


def build_skeleton(d: PolygonalDomain, extra: Iterable[Point2] = ()) -> Skeleton:
    segs = _segments(d)
    points: list[Point2] = []
    problems: list[str] = []
    for pts, _ in d.loops():
        for p in pts:
            _add_point(points, p)
    for crack in d.cracks:
        for p in crack:
            _add_point(points, p)
    for i, s in enumerate(segs):
        if s.a.dist(s.b) < POINT_TOL:
            problems.append(f"zero-length segment at {s.a}")
    for i, s in enumerate(segs):
        if s.crack is None:
            continue
        for j, t in enumerate(segs):
            if j == i or (t.crack is not None and j < i):
                continue
            if t.crack is not None and t.crack == s.crack and abs(t.index - s.index) == 1:
                hits, overlap = segment_intersections(s.a, s.b, t.a, t.b)
                if overlap:
                    problems.append(f"non-transversal intersection: crack folds back on itself near {hits[0]}")
                continue
            hits, overlap = segment_intersections(s.a, s.b, t.a, t.b)
            if overlap:
                problems.append(f"non-transversal intersection: collinear overlap near {hits[0]}")
            for h in hits:
                _add_point(points, h)
    for p in extra:
        _add_point(points, p)

    pieces: list[Piece] = []
    for si, s in enumerate(segs):
        on = []
        for pi, p in enumerate(points):
            t, dist = _point_segment_param(p, s.a, s.b)
            if dist < POINT_TOL:
                on.append((t, pi))
        on.sort()
        for (_, i0), (_, i1) in zip(on, on[1:]):
            if i0 != i1:
                pieces.append(Piece(si, i0, i1, s.crack is not None))
    incident: dict[int, list[int]] = {i: [] for i in range(len(points))}
    for k, pc in enumerate(pieces):
        incident[pc.i0].append(k)
        incident[pc.i1].append(k)
    return Skeleton(d, segs, points, pieces, incident, problems)


def _angle_to(p: Point2, q: Point2) -> float:
    return normalize_angle(math.atan2(q.y - p.y, q.x - p.x))


def _rays_at(sk: Skeleton, pi: int) -> list[Ray]:
    p = sk.points[pi]
    rays = []
    for k in sk.incident[pi]:
        pc = sk.pieces[k]
        outward = pc.i0 == pi
        other = sk.points[pc.i1 if outward else pc.i0]
        if pc.is_crack:
            role = "crack"
        else:
            role = "loop_out" if outward else "loop_in"
        rays.append(Ray(_angle_to(p, other), k, outward, role))
    return rays


def _smooth_tangent(sk: Skeleton, pi: int, loop_out: Ray) -> float | None:
    """Tangent angle at a vertex of a smooth loop, or None if not applicable."""
    seg = sk.segments[sk.pieces[loop_out.piece].segment]
    pts, smooth = sk.domain.loops()[seg.loop]
    if not smooth:
        return None
    p = sk.points[pi]
    n = len(pts)
    for k, v in enumerate(pts):
        if v.dist(p) < POINT_TOL:
            prev, nxt = pts[(k - 1) % n], pts[(k + 1) % n]
            return _angle_to(prev, nxt) if prev.dist(nxt) > POINT_TOL else None
    return None


def local_structure(sk: Skeleton, pi: int) -> tuple[list[LocalSector], list[str]]:
    """Sectors at candidate point ``pi`` with the rays bounding each of them.

    Returns the sectors and a list of problems (non-transversal rays, cracks
    leaving the closure).  Raises PointNotOnBoundary for interior points
    touched by no crack.
    """
    p = sk.points[pi]
    rays = _rays_at(sk, pi)
    problems = []
    loop_out = [r for r in rays if r.role == "loop_out"]
    loop_in = [r for r in rays if r.role == "loop_in"]
    cracks = [r for r in rays if r.role == "crack"]
    if len(loop_out) > 1 or len(loop_in) > 1 or len(loop_out) != len(loop_in):
        problems.append(f"boundary loops touch at {p}")
        return [], problems

    all_angles = sorted(r.angle for r in rays)
    for a, b in zip(all_angles, all_angles[1:] + all_angles[:1]):
        if len(all_angles) > 1 and angles_equal(a, b):
            problems.append(f"non-transversal intersection at {p}")
            break

    if loop_out:
        ro, ri = loop_out[0], loop_in[0]
        start_angle, end_angle = ro.angle, ri.angle
        tangent = _smooth_tangent(sk, pi, ro)
        if tangent is not None:
            start_angle, end_angle = tangent, normalize_angle(tangent + math.pi)
        else:
            seg_o = sk.segments[sk.pieces[ro.piece].segment]
            seg_i = sk.segments[sk.pieces[ri.piece].segment]
            if seg_o == seg_i:  # point inside a straight edge
                end_angle = normalize_angle(start_angle + math.pi)
        base = AngularSector.between(start_angle, end_angle)
        inside = []
        for r in cracks:
            rel = (r.angle - base.start) % TWO_PI
            if rel < ANGLE_TOL or rel > base.length - ANGLE_TOL:
                if rel < ANGLE_TOL or abs(rel - base.length) < ANGLE_TOL or rel > TWO_PI - ANGLE_TOL:
                    problems.append(f"non-transversal intersection at {p}")
                else:
                    problems.append(f"crack outside closure at {p}")
                continue
            inside.append((rel, r))
        inside.sort(key=lambda x: x[0])
        bounds = [(0.0, ro)] + inside + [(base.length, ri)]
        out = []
        for (r0, a), (r1, b) in zip(bounds, bounds[1:]):
            if r1 - r0 < ANGLE_TOL:
                continue
            out.append(LocalSector(AngularSector(normalize_angle(base.start + r0), r1 - r0), a, b))
        return out, problems

    if not cracks:
        raise PointNotOnBoundary(f"{p} is not on the boundary")
    cracks = sorted(cracks, key=lambda r: r.angle)
    out = []
    if len(cracks) == 1:
        r = cracks[0]
        out.append(LocalSector(AngularSector(r.angle, TWO_PI), r, r))
        return out, problems
    for a, b in zip(cracks, cracks[1:] + cracks[:1]):
        length = (b.angle - a.angle) % TWO_PI
        if length < ANGLE_TOL:
            continue
        out.append(LocalSector(AngularSector(a.angle, length), a, b))
    return out, problems


def validate_domain(d: PolygonalDomain) -> ValidationReport:
    return _validate(d)[0]


def _validate(d: PolygonalDomain) -> tuple[ValidationReport, Skeleton | None]:
    """Validation report plus the skeleton built along the way, for reuse."""
    v: list[str] = []
    outer = d.outer_boundary
    if len(outer) < 3:
        return ValidationReport(False, ("outer boundary needs at least 3 vertices",)), None
    if not _polygon_is_simple(outer):
        v.append("outer boundary is not a simple polygon")
    if signed_area(outer) <= 0:
        v.append("outer boundary is not counterclockwise")
    for hi, h in enumerate(d.holes):
        if len(h) < 3:
            v.append(f"hole {hi} needs at least 3 vertices")
            continue
        if not _polygon_is_simple(h):
            v.append(f"hole {hi} is not a simple polygon")
        if signed_area(h) >= 0:
            v.append(f"hole {hi} is not clockwise")
        if any(point_in_polygon(p, outer) != "inside" for p in h):
            v.append(f"hole {hi} is not strictly inside the outer boundary")
        for hj in range(hi):
            other = d.holes[hj]
            if any(point_in_polygon(p, other) != "outside" for p in h) or any(
                point_in_polygon(p, h) != "outside" for p in other
            ):
                v.append(f"holes {hj} and {hi} are not disjoint")
    loops = [outer, *d.holes]
    for i in range(len(loops)):
        for j in range(i + 1, len(loops)):
            if any(
                segment_intersections(a, b, c, e)[0]
                for a, b in _loop_edges(loops[i])
                for c, e in _loop_edges(loops[j])
            ):
                v.append(f"boundary loops {i} and {j} intersect")
    for ci, crack in enumerate(d.cracks):
        if len(crack) < 2:
            v.append(f"crack {ci} needs at least 2 points")
            continue
        for p in crack:
            if region_membership(d, p) == "outside":
                v.append(f"crack outside closure: crack {ci} point {p}")
    if v:
        return ValidationReport(False, tuple(v)), None

    sk = build_skeleton(d)
    v.extend(sk.problems)
    for pc in sk.pieces:
        if not pc.is_crack:
            continue
        a, b = sk.points[pc.i0], sk.points[pc.i1]
        mid = Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
        if region_membership(d, mid) == "outside":
            v.append(f"crack outside closure: segment near {mid}")
    for pi in range(len(sk.points)):
        if not any(sk.pieces[k].is_crack for k in sk.incident[pi]):
            continue
        try:
            _, probs = local_structure(sk, pi)
        except PointNotOnBoundary:
            continue
        v.extend(probs)
    return ValidationReport(not v, tuple(dict.fromkeys(v))), sk


def local_sector(d: PolygonalDomain, p: Point2 | tuple[float, float]) -> SectorSet:
    """Local cone basis at ``p``: the open arcs of directions pointing into the domain."""
    p = p if isinstance(p, Point2) else Point2(*p)
    if region_membership(d, p) == "outside":
        raise PointOutside(f"{p} lies outside the closure of the domain")
    sk = build_skeleton(d, extra=[p])
    pi = sk.find_point(p)
    secs, _ = local_structure(sk, pi)
    if not secs:
        raise PointNotOnBoundary(f"{p} has no well-defined local sector")
    return SectorSet(tuple(s.sector for s in secs))


# ---------------------------------------------------------------------------
# classification


def _closure_chains(s: SectorSet) -> list[list[AngularSector]]:
    """Group sectors into maximal chains whose closures are connected."""
    secs = list(s.sectors)
    n = len(secs)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if _touch(secs[i], secs[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[AngularSector]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(secs[i])
    return list(groups.values())


def _touching(s: SectorSet, sec: AngularSector) -> bool:
    return any(o is not sec and _touch(sec, o) for o in s.sectors)


def _is_crack(s: SectorSet) -> bool:
    if any(sec.length >= TWO_PI - ANGLE_TOL for sec in s.sectors):
        return True
    return any(_touching(s, sec) for sec in s.sectors)


def _closure_is_full(s: SectorSet) -> bool:
    return abs(s.measure - TWO_PI) < len(s) * ANGLE_TOL + ANGLE_TOL and len(_closure_chains(s)) == 1


def split_conical_crack(s: SectorSet) -> SectorSplit:
    """Separate components whose closures meet no other closure from the rest."""
    s.validate()
    free, crack = [], []
    for sec in s.sectors:
        (crack if _touching(s, sec) else free).append(sec)
    return SectorSplit(SectorSet(tuple(free)), SectorSet(tuple(crack)))


def cover_count(s: SectorSet, kind: PointKind) -> int:
    """Number of crack-cover vertices over a crack point (excluding the no-crack part)."""
    if kind == PointKind.CONICAL_CRACK:
        return len(split_conical_crack(s).crack_part)
    return len(s)


def classify_point(s: SectorSet) -> BoundaryPointClass:
    s.validate()
    if not _is_crack(s):
        if len(s) == 1 and abs(s.sectors[0].length - math.pi) < ANGLE_TOL:
            return BoundaryPointClass(PointKind.SMOOTH_NON_CRACK, 0)
        return BoundaryPointClass(PointKind.TRUE_CONICAL_NON_CRACK, 0)
    chains = _closure_chains(s)
    if _closure_is_full(s):
        if len(s) == 2 and all(abs(sec.length - math.pi) < ANGLE_TOL for sec in s.sectors):
            return BoundaryPointClass(PointKind.SMOOTH_CRACK, 2)
        return BoundaryPointClass(PointKind.INNER_CRACK, len(s))
    if len(chains) == 1 and abs(s.measure - math.pi) < len(s) * ANGLE_TOL:
        return BoundaryPointClass(PointKind.OUTER_CRACK, len(s))
    split = split_conical_crack(s)
    k = len(split.crack_part) + (1 if len(split.no_crack_part) else 0)
    return BoundaryPointClass(PointKind.CONICAL_CRACK, k)


def ramification_number(s: SectorSet) -> int:
    cls = classify_point(s)
    if not cls.kind.is_crack:
        raise NotACrackPoint(f"{s} is not a crack point ({cls.kind.value})")
    return cls.ramification


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusPoint:
    point: Point2
    sectors: SectorSet
    cls: BoundaryPointClass
    split: SectorSplit | None = None


@dataclass(frozen=True)
class VertexCensus:
    true_conical_non_crack: tuple[CensusPoint, ...]
    singular_cracks: tuple[CensusPoint, ...]
    artificial: tuple[CensusPoint, ...] = ()
    smooth_cracks: tuple[CensusPoint, ...] = ()

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.true_conical_non_crack)

    @property
    def m(self) -> int:
        return len(self.singular_cracks)

    @property
    def m_prime(self) -> int:
        return sum(
            1
            for c in self.singular_cracks
            if c.cls.kind == PointKind.CONICAL_CRACK and len(c.split.no_crack_part)
        )

    @property
    def alpha(self) -> int:
        """Total number of crack covers: components of omega (or of its crack part)."""
        return sum(cover_count(c.sectors, c.cls.kind) for c in self.singular_cracks)

    @property
    def vertex_count(self) -> int:
        return self.l + self.m_prime + self.alpha


def classify_candidates(d: PolygonalDomain) -> tuple[Skeleton, list[tuple[int, list[LocalSector], BoundaryPointClass]]]:
    """Classify every candidate singular point; the skeleton is returned for reuse."""
    rep, sk = _validate(d)
    if not rep.ok:
        raise InvalidDomain(rep.violations)
    out = []
    for pi in range(len(sk.points)):
        secs, _ = local_structure(sk, pi)
        ss = SectorSet(tuple(x.sector for x in secs))
        out.append((pi, secs, classify_point(ss)))
    return sk, out


def vertex_census(d: PolygonalDomain) -> VertexCensus:
    return census_from(*classify_candidates(d))


def census_from(sk: Skeleton, classified) -> VertexCensus:
    """Census from the output of :func:`classify_candidates`."""
    true_pts, cracks, artificial, smooth = [], [], [], []
    for pi, secs, cls in classified:
        ss = SectorSet(tuple(x.sector for x in secs))
        p = sk.points[pi]
        if cls.kind == PointKind.SMOOTH_NON_CRACK:
            artificial.append(CensusPoint(p, ss, BoundaryPointClass(PointKind.ARTIFICIAL_VERTEX, 0)))
        elif cls.kind == PointKind.SMOOTH_CRACK:
            smooth.append(CensusPoint(p, ss, cls))
        elif cls.kind == PointKind.TRUE_CONICAL_NON_CRACK:
            true_pts.append(CensusPoint(p, ss, cls))
        else:
            cracks.append(CensusPoint(p, ss, cls, split_conical_crack(ss)))
    return VertexCensus(tuple(true_pts), tuple(cracks), tuple(artificial), tuple(smooth))


# ---------------------------------------------------------------------------
# sample domains


def unit_square() -> PolygonalDomain:
    return PolygonalDomain(((0, 0), (1, 0), (1, 1), (0, 1)))


def l_shape() -> PolygonalDomain:
    return PolygonalDomain(((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)))


def regular_polygon(n: int, radius: float = 1.0, smooth: bool = False) -> tuple[Point2, ...]:
    return tuple(
        Point2(radius * math.cos(TWO_PI * k / n), radius * math.sin(TWO_PI * k / n)) for k in range(n)
    )


def disk(n: int = 64) -> PolygonalDomain:
    """Unit disk as a smooth loop discretized by ``n`` vertices."""
    return PolygonalDomain(regular_polygon(n), smooth_outer=True)


def slit_disk(n: int = 64) -> PolygonalDomain:
    """Unit disk minus the radius segment from the centre to (1, 0)."""
    return PolygonalDomain(regular_polygon(n), cracks=(((0.0, 0.0), (1.0, 0.0)),), smooth_outer=True)
