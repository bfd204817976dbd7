"""Combinatorial model of the boundary groupoid.

The groupoid over the desingularized boundary ``M`` is stored as strata:
the pair groupoid over the interior ``M0`` and, for every vertex ``v``, the
piece ``(boundary omega_v)^2 x (R+ x {v})`` sitting over the boundary points
of ``M`` at ``v``.  Arrows and Haar systems are never materialized.

Abstract cone bases of higher-dimensional domains enter through
:class:`ConeBase` records that carry only component counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .unfold import DesingularizedBoundary, UnfoldedVertex

INTERIOR = "interior"
BOUNDARY = "boundary"
ALGEBROID_TAG = "b-tangent bundle of M"


class UnknownStratum(KeyError):
    pass


@dataclass(frozen=True)
class ConeBase:
    """Abstract cone base ``omega`` of a conical point.

    ``boundary_components`` is the number of connected components of the
    boundary of omega (the number of points when it is zero-dimensional),
    ``components`` the number of components of omega itself.
    """

    boundary_components: int
    components: int = 1
    positive_dimensional: bool = True

    def __post_init__(self):
        if self.boundary_components < 1 or self.components < 1:
            raise ValueError("cone base counts must be positive")


@dataclass(frozen=True)
class VertexStratum:
    vertex_id: str
    k: int
    positive_dimensional: bool = False
    boundary_components: int | None = None
    vertex: UnfoldedVertex | ConeBase | None = None

    @property
    def descriptor(self) -> str:
        base = "bd(omega)" if self.positive_dimensional else f"P_{self.k}"
        return f"{base} x (R+ x {{{self.vertex_id}}})"

    @property
    def connected_boundary(self) -> bool:
        count = self.boundary_components if self.boundary_components is not None else self.k
        return count == 1


@dataclass(frozen=True)
class IndicialSummand:
    vertex_id: str
    k: int
    algebra: str


@dataclass(frozen=True)
class StratumDescriptor:
    stratum_id: str
    descriptor: str
    parts: tuple[str, ...] = ()


@dataclass(frozen=True)
class BoundaryGroupoid:
    # the collar length is a chart choice on the units, not part of the groupoid's structure
    units: DesingularizedBoundary | None = field(compare=False)
    vertex_strata: tuple[VertexStratum, ...]
    interior_stratum: str = "pair groupoid M0 x M0"
    amenable: bool = True
    algebroid_tag: str = ALGEBROID_TAG

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_strata)

    @property
    def is_pair_groupoid(self) -> bool:
        return not self.vertex_strata

    def stratum(self, vid: str) -> VertexStratum:
        for s in self.vertex_strata:
            if s.vertex_id == vid:
                return s
        raise UnknownStratum(vid)


def build_groupoid(m: DesingularizedBoundary) -> BoundaryGroupoid:
    strata = []
    for v in m.vertices:
        k = v.boundary_count
        strata.append(VertexStratum(v.id, k, False, k, v))
    return BoundaryGroupoid(m, tuple(strata))


def abstract_groupoid(bases: Iterable[ConeBase]) -> BoundaryGroupoid:
    """Groupoid of an abstract conical domain whose vertices have the given cone bases."""
    strata = []
    for i, b in enumerate(bases, start=1):
        k = b.boundary_components
        strata.append(VertexStratum(f"q{i}", k, b.positive_dimensional, k, b))
    return BoundaryGroupoid(None, tuple(strata))


def restrict(g: BoundaryGroupoid, stratum_id: str) -> StratumDescriptor:
    """Reduction of the groupoid to an invariant subset of the units."""
    if stratum_id == INTERIOR:
        return StratumDescriptor(INTERIOR, "pair groupoid M0 x M0")
    if stratum_id == BOUNDARY:
        parts = tuple(s.descriptor for s in g.vertex_strata)
        return StratumDescriptor(BOUNDARY, " |_| ".join(parts) or "empty", parts)
    try:
        s = g.stratum(stratum_id)
    except UnknownStratum:
        raise UnknownStratum(f"no stratum named {stratum_id!r}") from None
    return StratumDescriptor(s.vertex_id, s.descriptor, (s.descriptor,))


def indicial_summands(g: BoundaryGroupoid) -> list[IndicialSummand]:
    out = []
    for s in g.vertex_strata:
        algebra = "K (x) C0(R+)" if s.positive_dimensional else f"M_{s.k}(C0(R+))"
        out.append(IndicialSummand(s.vertex_id, s.k, algebra))
    return out


def is_b_groupoid(g: BoundaryGroupoid) -> bool:
    """True when every vertex has connected boundary of its cone base."""
    return all(s.connected_boundary for s in g.vertex_strata)


def equivalent(g1: BoundaryGroupoid, g2: BoundaryGroupoid) -> bool:
    """Groupoid equivalence: equal numbers of vertex strata."""
    return g1.vertex_count == g2.vertex_count
