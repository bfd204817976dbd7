"""Layer potentials on polygonal domains: boundary geometry, groupoids, K-theory and Mellin symbols."""

from .geometry import (
    AngularSector, BoundaryPointClass, InvalidDomain, Point2, PointKind, PolygonalDomain,
    SectorSet, classify_point, local_sector, split_conical_crack, validate_domain, vertex_census,
)
from .groupoid import (
    ConeBase, abstract_groupoid, build_groupoid, equivalent, indicial_summands, is_b_groupoid, restrict,
)
from .ktheory import (
    FreeAbelianGroup, KPair, SixTermData, k_boundary_algebra, k_indicial, k_straight_cone, solve_six_term,
)
from .mellin import (
    DecayBound, MellinKernel, ScalarKernel, fredholm_verdict, invertibility_scan, mellin_transform,
    symbol_on_line, wedge_double_layer_kernel,
)
from .unfold import covering_multiplicity, desingularize, unfold_boundary, wedge

__version__ = "0.1.0"

__all__ = [
    "AngularSector", "BoundaryPointClass", "ConeBase", "DecayBound", "FreeAbelianGroup",
    "InvalidDomain", "KPair", "MellinKernel", "Point2", "PointKind", "PolygonalDomain",
    "ScalarKernel", "SectorSet", "SixTermData", "abstract_groupoid", "build_groupoid",
    "classify_point", "covering_multiplicity", "desingularize", "equivalent", "fredholm_verdict",
    "indicial_summands", "invertibility_scan", "is_b_groupoid", "k_boundary_algebra", "k_indicial",
    "k_straight_cone", "local_sector", "mellin_transform", "restrict", "solve_six_term",
    "split_conical_crack", "symbol_on_line", "unfold_boundary", "validate_domain", "vertex_census",
    "wedge", "wedge_double_layer_kernel",
]
