"""From a domain to its K-groups and a Fredholm verdict, one stage at a time.

Run with ``python demos/walkthrough.py``.
"""

from layerpot import geometry as g
from layerpot.cli import vertex_fredholm
from layerpot.groupoid import build_groupoid, indicial_summands
from layerpot.ktheory import k_boundary_algebra, k_indicial
from layerpot.unfold import desingularize, unfold_boundary


def show(name, domain):
    print(f"== {name}")
    census = g.vertex_census(domain)
    print(f"census: l={census.l} m={census.m} m'={census.m_prime} alpha={census.alpha}")
    for p in census.true_conical_non_crack + census.singular_cracks:
        print(f"  ({p.point.x:g}, {p.point.y:g}) {p.cls.kind.value} ramification={p.cls.ramification}")

    # cracks are opened up: every side of a crack becomes its own stretch of boundary
    unfolded = unfold_boundary(domain, census)
    m = desingularize(unfolded)
    print(f"unfolded vertices: {len(unfolded.vertex_set)}, collars: {len(m.collars)}")

    grp = build_groupoid(m)
    print("indicial algebra:", " (+) ".join(s.algebra for s in indicial_summands(grp)) or "0")
    print("K(boundary algebra):", k_boundary_algebra(grp), "| K(indicial):", k_indicial(grp))

    report = vertex_fredholm(m.vertices, elliptic=True)
    for v in report.per_vertex:
        sv = f"{v.scan.min_singular_value:.6f}" if v.scan else "-"
        print(f"  vertex {v.vertex_id}: {v.verdict} (min singular value {sv})" + (f" {v.note}" if v.note else ""))
    print("verdict for 1/2 I + K:", report.overall)
    print()


if __name__ == "__main__":
    show("unit square", g.unit_square())
    show("L-shape", g.l_shape())
    # the slit tip is a full turn; the double layer kernel degenerates there
    show("slit disk", g.slit_disk())
