"""K-groups of the layer potentials algebra, the indicial algebra and straight cones.

Every group in scope is free abelian, so a K-group is just a rank.  The
boundary algebra is computed by rank bookkeeping around the six-term exact
sequence of ``0 -> K -> C*(G) -> indicial algebra -> 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groupoid import BoundaryGroupoid


class KTheoryError(ValueError):
    pass


class Inconsistent(KTheoryError):
    pass


class Underdetermined(KTheoryError):
    pass


@dataclass(frozen=True, order=True)
class FreeAbelianGroup:
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise KTheoryError(f"rank must be a nonnegative integer, got {self.rank!r}")

    def __str__(self) -> str:
        if self.rank == 0:
            return "0"
        return "Z" if self.rank == 1 else f"Z^{self.rank}"


def Z(rank: int = 1) -> FreeAbelianGroup:  # noqa: N802
    return FreeAbelianGroup(rank)


@dataclass(frozen=True)
class KPair:
    k0: FreeAbelianGroup
    k1: FreeAbelianGroup
    smooth_case: bool = False

    @classmethod
    def of(cls, r0: int, r1: int, smooth_case: bool = False) -> "KPair":
        return cls(FreeAbelianGroup(r0), FreeAbelianGroup(r1), smooth_case)

    @property
    def ranks(self) -> tuple[int, int]:
        return (self.k0.rank, self.k1.rank)

    def __str__(self) -> str:
        return f"K0={self.k0} K1={self.k1}"


@dataclass(frozen=True)
class SixTermData:
    """Ideal and quotient K-groups plus certified facts about the connecting maps.

    ``delta_onto``: the index map K1(quotient) -> K0(ideal) is surjective.
    ``delta_split``: its kernel splits off K1(quotient).  With free groups the
    splitting always holds at the level of ranks; the flag is carried so the
    certified input is visible in reports.
    ``delta_rank`` / ``exp_rank`` pin the ranks of the index and exponential
    maps when they are known otherwise.
    """

    ideal: KPair
    quotient: KPair
    delta_onto: bool
    delta_split: bool = True
    delta_rank: int | None = None
    exp_rank: int | None = None


def _delta_rank(d: SixTermData) -> int:
    target = d.ideal.k0.rank
    source = d.quotient.k1.rank
    if d.delta_onto:
        if source < target:
            raise Inconsistent(f"index map from rank {source} cannot surject onto rank {target}")
        if d.delta_rank is not None and d.delta_rank != target:
            raise Inconsistent("delta_rank contradicts delta_onto")
        return target
    if target == 0:
        raise Inconsistent("a map onto the zero group is always surjective")
    if d.delta_rank is not None:
        if not 0 <= d.delta_rank < target or d.delta_rank > source:
            # a full-rank map that is not onto has a torsion cokernel, which is not modelled
            raise Inconsistent(f"delta_rank {d.delta_rank} impossible for a non-surjective map")
        return d.delta_rank
    if source == 0:
        return 0
    raise Underdetermined("rank of the index map is not determined by the flags")


def _exp_rank(d: SixTermData) -> int:
    source = d.quotient.k0.rank
    target = d.ideal.k1.rank
    if d.exp_rank is not None:
        if not 0 <= d.exp_rank <= min(source, target):
            raise Inconsistent(f"exp_rank {d.exp_rank} exceeds the groups involved")
        return d.exp_rank
    if min(source, target) == 0:
        return 0
    raise Underdetermined("rank of the exponential map is not determined")


def solve_six_term(d: SixTermData) -> KPair:
    """K-groups of the middle algebra of an extension.

    Exactness gives ``K0(A) = coker(delta) (+) ker(exp)`` and
    ``K1(A) = coker(exp) (+) ker(delta)`` rank-wise.
    """
    rd = _delta_rank(d)
    re = _exp_rank(d)
    r0 = (d.ideal.k0.rank - rd) + (d.quotient.k0.rank - re)
    r1 = (d.ideal.k1.rank - re) + (d.quotient.k1.rank - rd)
    return KPair.of(r0, r1)


def alternating_rank_sum(ideal: KPair, middle: KPair, quotient: KPair) -> int:
    """Alternating sum of ranks around the hexagon; zero for an exact sequence."""
    return (
        ideal.k0.rank - middle.k0.rank + quotient.k0.rank
        - ideal.k1.rank + middle.k1.rank - quotient.k1.rank
    )


#: K-theory of the compact operators
K_COMPACT = KPair.of(1, 0)


def boundary_preset(n_vertices: int) -> SixTermData:
    """Extension ``0 -> K -> C*(G) -> (+)_v M_k(C0(R+)) -> 0`` with surjective index map.

    Surjectivity comes from comparing with a single straight cone, whose
    algebra has vanishing K-theory.
    """
    return SixTermData(K_COMPACT, KPair.of(0, n_vertices), delta_onto=True, delta_split=True)


def k_straight_cone(k: int, positive_dimensional: bool = False) -> KPair:
    """K-theory of the algebra of a straight cone: M_k or K tensor the Wiener-Hopf algebra."""
    if k < 1:
        raise KTheoryError("a cone base has at least one boundary component")
    return KPair.of(0, 0)


def k_indicial(g: BoundaryGroupoid) -> KPair:
    """One copy of K1(C0(R)) = Z per vertex stratum."""
    return KPair.of(0, g.vertex_count)


def k_boundary_algebra(g: BoundaryGroupoid) -> KPair:
    """K-groups of C*(G).

    Without vertices the groupoid is the pair groupoid and C*(G) is the
    compact operators; the result is then flagged ``smooth_case``.
    """
    if g.vertex_count == 0:
        return KPair(K_COMPACT.k0, K_COMPACT.k1, smooth_case=True)
    return solve_six_term(boundary_preset(g.vertex_count))
