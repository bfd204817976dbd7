"""Domain files, the analysis pipeline and report emission.

Grammar (one statement per line, ``#`` starts a comment)::

    polygon: x0 y0 x1 y1 ...         outer boundary, counterclockwise (exactly one)
    smooth-polygon: x0 y0 ...        same, but a discretized smooth curve
    hole: x0 y0 ...                  clockwise, any number
    smooth-hole: x0 y0 ...
    crack: x0 y0 x1 y1 ...           polyline, any number
    conebase: k=2 components=1 dim=positive
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence, TextIO

import numpy as np

from . import geometry as geo
from .geometry import Point2, PolygonalDomain, SectorSet, vertex_census
from .groupoid import (
    ConeBase, abstract_groupoid, build_groupoid, indicial_summands, is_b_groupoid,
)
from .ktheory import k_boundary_algebra, k_indicial
from .mellin import (
    DEFAULT_LINE, DEFAULT_MARGIN, DEFAULT_SCAN_TOL, MellinError, double_layer_kernel,
    fredholm_verdict, symbol_on_line, synthetic_zero_symbol, wedge_double_layer_kernel,
)
from .unfold import desingularize, unfold_boundary

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

_KEYWORDS = ("polygon", "smooth-polygon", "hole", "smooth-hole", "crack", "conebase")
_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\Z")
_TOKEN = re.compile(r"\S+")
_HEAD = re.compile(r"\s*([A-Za-z][A-Za-z-]*)\s*:")


class DomainFileError(ValueError):
    pass


class DomainSyntaxError(DomainFileError):
    def __init__(self, line: int, column: int, expected: str):
        self.line, self.column, self.expected = line, column, expected
        super().__init__(f"line {line}, column {column}: expected {expected}")


class SemanticError(DomainFileError):
    pass


@dataclass(frozen=True)
class DomainFile:
    domain: PolygonalDomain
    cone_bases: tuple[ConeBase, ...] = ()
    source: str = field(default="", compare=False, repr=False)


def _coords(rest: str, offset: int, lineno: int) -> list[float]:
    values = []
    for m in _TOKEN.finditer(rest):
        if not _NUMBER.match(m.group()):
            raise DomainSyntaxError(lineno, offset + m.start() + 1, "number")
        values.append(float(m.group()))
    if len(values) % 2:
        raise SemanticError(f"line {lineno}: coordinates must come in x y pairs")
    return values


def _pairs(values: list[float]) -> tuple[Point2, ...]:
    return tuple(Point2(values[i], values[i + 1]) for i in range(0, len(values), 2))


def _conebase(rest: str, offset: int, lineno: int) -> ConeBase:
    fields: dict[str, str] = {}
    for m in _TOKEN.finditer(rest):
        key, sep, val = m.group().partition("=")
        col = offset + m.start() + 1
        if not sep or key not in ("k", "components", "dim") or key in fields:
            raise DomainSyntaxError(lineno, col, "k=<int>, components=<int> or dim=<0|positive>")
        if key == "dim" and val not in ("0", "positive"):
            raise DomainSyntaxError(lineno, col + 4, "0 or positive")
        if key != "dim" and not val.isdigit():
            raise DomainSyntaxError(lineno, col + len(key) + 1, "integer")
        fields[key] = val
    if "k" not in fields:
        raise SemanticError(f"line {lineno}: conebase needs k=<int>")
    try:
        return ConeBase(
            int(fields["k"]), int(fields.get("components", "1")), fields.get("dim", "positive") == "positive",
        )
    except ValueError as exc:
        raise SemanticError(f"line {lineno}: {exc}") from None


def parse_domain_file(text: str) -> DomainFile:
    outer = None
    smooth_outer = False
    holes, smooth_holes, cracks, bases = [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _HEAD.match(line)
        if not m or m.group(1) not in _KEYWORDS:
            col = len(line) - len(line.lstrip()) + 1
            raise DomainSyntaxError(lineno, col, "one of " + ", ".join(k + ":" for k in _KEYWORDS))
        key, rest, offset = m.group(1), line[m.end():], m.end()
        if key == "conebase":
            bases.append(_conebase(rest, offset, lineno))
            continue
        pts = _pairs(_coords(rest, offset, lineno))
        if key in ("polygon", "smooth-polygon"):
            if outer is not None:
                raise SemanticError(f"line {lineno}: only one polygon is allowed")
            if len(pts) < 3:
                raise SemanticError("polygon needs ≥ 3 vertices")
            if geo.signed_area(pts) <= 0:
                raise SemanticError(f"line {lineno}: polygon must be counterclockwise")
            outer, smooth_outer = pts, key == "smooth-polygon"
        elif key in ("hole", "smooth-hole"):
            if len(pts) < 3:
                raise SemanticError(f"line {lineno}: hole needs ≥ 3 vertices")
            if geo.signed_area(pts) >= 0:
                raise SemanticError(f"line {lineno}: hole must be clockwise")
            holes.append(pts)
            smooth_holes.append(key == "smooth-hole")
        else:
            if len(pts) < 2:
                raise SemanticError(f"line {lineno}: crack needs ≥ 2 points")
            cracks.append(pts)
    if outer is None:
        raise SemanticError("a polygon line is required")
    domain = PolygonalDomain(outer, tuple(holes), tuple(cracks), smooth_outer, tuple(smooth_holes))
    return DomainFile(domain, tuple(bases), text)


def serialize(df: DomainFile) -> str:
    """Text that parses back to an equal :class:`DomainFile`; floats use ``repr``."""

    def coords(pts):
        return " ".join(f"{p.x!r} {p.y!r}" for p in pts)

    d = df.domain
    lines = [f"{'smooth-polygon' if d.smooth_outer else 'polygon'}: {coords(d.outer_boundary)}"]
    for h, smooth in zip(d.holes, d.smooth_holes):
        lines.append(f"{'smooth-hole' if smooth else 'hole'}: {coords(h)}")
    lines.extend(f"crack: {coords(c)}" for c in d.cracks)
    for b in df.cone_bases:
        dim = "positive" if b.positive_dimensional else "0"
        lines.append(f"conebase: k={b.boundary_components} components={b.components} dim={dim}")
    return "\n".join(lines) + "\n"


# --- reports -------------------------------------------------------------------------

def fmt(x: float) -> str:
    s = "%.9g" % x
    return "0" if s == "-0" else s


def _num(x: float) -> float:
    """Round to the nine significant digits shown in text reports."""
    return float(fmt(x))


def _point(p: Point2) -> list[float]:
    return [_num(p.x), _num(p.y)]


def _arcs(s: SectorSet) -> list[list[float]]:
    return [[_num(a.start), _num(a.start + a.length)] for a in s.sectors]


@dataclass
class Report:
    command: str
    digest: str
    blocks: dict[str, Any] = field(default_factory=dict)


def _census_block(census) -> dict:
    points = []
    for c in census.true_conical_non_crack + census.singular_cracks:
        points.append({
            "point": _point(c.point),
            "kind": c.cls.kind.value,
            "ramification": c.cls.ramification,
            "sectors": _arcs(c.sectors),
        })
    return {
        "l": census.l, "m": census.m, "m_prime": census.m_prime, "alpha": census.alpha,
        "artificial": len(census.artificial), "smooth_cracks": len(census.smooth_cracks),
        "points": points,
    }


def _unfold_block(u, m) -> dict:
    return {
        "vertices": [
            {"id": v.id, "role": v.role.value, "base": _point(v.base_point),
             "sectors": _arcs(v.sector), "k": v.boundary_count}
            for v in u.vertex_set
        ],
        "intervals": sum(1 for a in m.arcs if a.kind == "interval"),
        "circles": sum(1 for a in m.arcs if a.kind == "circle"),
        "collars": len(m.collars),
    }


def _groupoid_block(g) -> dict:
    return {
        "interior": g.interior_stratum,
        "strata": [{"id": s.vertex_id, "k": s.k, "descriptor": s.descriptor} for s in g.vertex_strata],
        "indicial": [s.algebra for s in indicial_summands(g)],
        "b_groupoid": is_b_groupoid(g),
        "amenable": g.amenable,
        "algebroid": g.algebroid_tag,
    }


def _ktheory_block(g) -> dict:
    b, i = k_boundary_algebra(g), k_indicial(g)
    return {
        "boundary": {"K0": b.k0.rank, "K1": b.k1.rank, "smooth_case": b.smooth_case},
        "indicial": {"K0": i.k0.rank, "K1": i.k1.rank},
    }


def _fredholm_block(report, params: dict) -> dict:
    rows = []
    for r in report.per_vertex:
        row = {"id": r.vertex_id, "verdict": r.verdict}
        if r.scan is not None:
            s = r.scan
            row.update(
                min_sv=_num(s.min_singular_value), argmin_xi=_num(s.argmin_xi),
                resolution=_num(s.grid_resolution), error_bound=_num(s.error_bound),
                refined=s.refined,
            )
        if r.note:
            row["note"] = r.note
        rows.append(row)
    return {
        "parameters": params,
        "elliptic": report.elliptic,
        "sobolev": report.sobolev_context,
        "vertices": rows,
        "overall": report.overall,
    }


def _group(rank: int) -> str:
    return "0" if rank == 0 else ("Z" if rank == 1 else f"Z^{rank}")


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _value(x) -> str:
    if isinstance(x, bool):
        return _flag(x)
    if isinstance(x, float):
        return fmt(x)
    if isinstance(x, list):
        return "(" + ", ".join(_value(v) for v in x) + ")"
    return str(x)


def _text_lines(name: str, block: dict) -> list[str]:
    out = [f"[{name}]"]
    if name == "census":
        out.append(f"l={block['l']} m={block['m']} m'={block['m_prime']} alpha={block['alpha']}")
        out.append(f"artificial={block['artificial']} smooth_cracks={block['smooth_cracks']}")
        for p in block["points"]:
            out.append(f"point {_value(p['point'])} {p['kind']} ram={p['ramification']} "
                       f"sectors={_value(p['sectors'])}")
    elif name == "unfold":
        for v in block["vertices"]:
            out.append(f"vertex {v['id']} {v['role']} at {_value(v['base'])} k={v['k']} "
                       f"sectors={_value(v['sectors'])}")
        out.append(f"intervals={block['intervals']} circles={block['circles']} collars={block['collars']}")
    elif name in ("groupoid", "abstract"):
        out.append(f"interior: {block['interior']}")
        for s in block["strata"]:
            out.append(f"stratum {s['id']} k={s['k']}: {s['descriptor']}")
        out.append("indicial: " + (" (+) ".join(block["indicial"]) or "0"))
        out.append(f"b_groupoid={_flag(block['b_groupoid'])} amenable={_flag(block['amenable'])}")
        out.append(f"algebroid: {block['algebroid']}")
        if "ktheory" in block:
            k = block["ktheory"]
            out.append(f"K0={_group(k['K0'])} K1={_group(k['K1'])}")
    elif name == "ktheory":
        b, i = block["boundary"], block["indicial"]
        out.append(f"K0={_group(b['K0'])} K1={_group(b['K1'])}"
                   + (" smooth_case=true" if b["smooth_case"] else ""))
        out.append(f"indicial K0={_group(i['K0'])} K1={_group(i['K1'])}")
    elif name == "fredholm":
        out.append(" ".join(f"{k}={_value(v)}" for k, v in block["parameters"].items()))
        out.append(f"elliptic={_flag(block['elliptic'])}")
        out.append(f"spaces: {block['sobolev']}")
        for r in block["vertices"]:
            out.append("vertex " + " ".join(
                f"{k}={_value(v)}" if k != "id" else str(v) for k, v in r.items()
            ))
        out.append(f"overall={block['overall']}")
    else:
        out.extend(f"{k}={_value(v)}" for k, v in block.items())
    return out


def emit_report(r: Report, format: str = "text") -> str:  # noqa: A002
    if format == "json":
        doc = {"command": r.command, "digest": r.digest, **r.blocks}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    lines = [f"command: {r.command}", f"digest: {r.digest}"]
    for name, block in r.blocks.items():
        lines.extend(_text_lines(name, block))
    return "\n".join(lines) + "\n"


def read_report(text: str) -> Report:
    """Inverse of ``emit_report(..., 'json')``."""
    doc = json.loads(text)
    command, digest = doc.pop("command"), doc.pop("digest")
    return Report(command, digest, doc)


# --- pipeline ------------------------------------------------------------------------

def _xi_grid(args) -> np.ndarray:
    return np.linspace(-args.xi_max, args.xi_max, args.xi_steps)


def _params(args) -> dict:
    return {"line": _num(args.line), "xi_max": _num(args.xi_max), "xi_steps": args.xi_steps,
            "tol": _num(args.tol), "margin": _num(DEFAULT_MARGIN)}


def vertex_fredholm(
    vertices, elliptic: bool, line: float = DEFAULT_LINE, xi_grid=None, tol: float = DEFAULT_SCAN_TOL,
):
    """Verdict for ``1/2 I + K`` with one double-layer indicial operator per unfolded vertex.

    Vertices whose kernel cannot be formed (a full-turn crack tip) are
    reported as inconclusive with the reason attached.
    """
    grid = np.linspace(-40.0, 40.0, 4001) if xi_grid is None else np.asarray(xi_grid, dtype=float)
    cache: dict = {}
    symbols, notes = [], []
    for v in vertices:
        try:
            kern = double_layer_kernel(v.sector)
        except MellinError as exc:
            symbols.append(None)
            notes.append(str(exc))
            continue
        symbols.append(symbol_on_line(kern, line, grid, cache=cache))
        notes.append("")
    return fredholm_verdict(elliptic, symbols, tol, vertex_ids=[v.id for v in vertices], notes=notes)


def _preset_fredholm(preset: str, args):
    kind, _, arg = preset.partition(":")
    grid = _xi_grid(args)
    if kind == "wedge":
        try:
            theta = float(arg)
        except ValueError:
            raise DomainFileError(f"bad wedge angle {arg!r}") from None
        sample = symbol_on_line(wedge_double_layer_kernel(theta), args.line, grid)
    elif kind == "synthetic" and arg == "zero":
        sample = synthetic_zero_symbol(grid)
    else:
        raise DomainFileError(f"unknown preset {preset!r}; use wedge:<theta> or synthetic:zero")
    return fredholm_verdict(args.elliptic, [sample], args.tol, vertex_ids=["v"])


def build_report(args, command: str) -> Report:
    cmd = args.command
    if args.preset:
        digest = hashlib.sha256(args.preset.encode()).hexdigest()
        r = Report(command, digest)
        r.blocks["fredholm"] = _fredholm_block(_preset_fredholm(args.preset, args), _params(args))
        return r
    with open(args.domain, "rb") as fh:
        data = fh.read()
    r = Report(command, hashlib.sha256(data).hexdigest())
    df = parse_domain_file(data.decode("utf-8"))
    if cmd == "classify":
        r.blocks["census"] = _census_block(vertex_census(df.domain))
        return r
    u = unfold_boundary(df.domain)
    r.blocks["census"] = _census_block(u.census)
    m = desingularize(u)
    r.blocks["unfold"] = _unfold_block(u, m)
    if cmd == "unfold":
        return r
    g = build_groupoid(m)
    r.blocks["groupoid"] = _groupoid_block(g)
    if df.cone_bases:
        ga = abstract_groupoid(df.cone_bases)
        block = _groupoid_block(ga)
        kb = k_boundary_algebra(ga)
        block["ktheory"] = {"K0": kb.k0.rank, "K1": kb.k1.rank}
        r.blocks["abstract"] = block
    if cmd == "groupoid":
        return r
    r.blocks["ktheory"] = _ktheory_block(g)
    if cmd == "ktheory":
        return r
    verdict = vertex_fredholm(m.vertices, args.elliptic, args.line, _xi_grid(args), args.tol)
    r.blocks["fredholm"] = _fredholm_block(verdict, _params(args))
    return r


def _bool(text: str) -> bool:
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    raise argparse.ArgumentTypeError("expected true or false")


def _positive(kind):
    def conv(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError("must be positive")
        return v
    return conv


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(
        prog="layerpot", description="Layer potential analysis of polygonal domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, helptext in (
        ("classify", "boundary point census"),
        ("unfold", "unfolded boundary and collars"),
        ("groupoid", "boundary groupoid strata"),
        ("ktheory", "K-groups of the layer potentials algebra"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("domain")
    p = sub.add_parser("fredholm", parents=[common], help="Fredholm verdict for 1/2 I + K")
    p.add_argument("domain", nargs="?")
    p.add_argument("--preset", help="wedge:<theta> or synthetic:zero instead of a domain file")
    p.add_argument("--elliptic", type=_bool, required=True, metavar="true|false")
    p.add_argument("--line", type=float, default=DEFAULT_LINE)
    p.add_argument("--xi-max", type=_positive(float), default=40.0)
    p.add_argument("--xi-steps", type=_positive(int), default=4001)
    p.add_argument("--tol", type=_positive(float), default=DEFAULT_SCAN_TOL)
    return parser


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = make_parser()
    argv = list(argv)
    try:
        old = sys.stderr
        sys.stderr = stderr
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = old
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "fredholm":
        if (args.domain is None) == (args.preset is None):
            print("layerpot fredholm: give either a domain file or --preset", file=stderr)
            return EXIT_USAGE
    else:
        args.preset = None
    try:
        report = build_report(args, " ".join(argv))
    except OSError as exc:
        print(f"error: {exc.strerror}: {exc.filename}", file=stderr)
        return EXIT_DOMAIN
    except geo.InvalidDomain as exc:
        print("error: invalid domain", file=stderr)
        for v in exc.violations:
            print(f"  {v}", file=stderr)
        return EXIT_DOMAIN
    except (DomainFileError, geo.GeometryError, MellinError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    stdout.write(emit_report(report, args.format))
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))
