"""Mellin transforms of convolution kernels and invertibility scans of their symbols.

A Mellin convolution operator on ``R+`` has kernel ``k(r, s) = kappa(r/s)/s``
and acts diagonally after the Mellin transform, as multiplication by
``M(z) = int_0^inf kappa(t) t^(z-1) dt`` on a vertical line ``Re z = a``.
Operators ``c I + K`` keep the constant separately, so the non-decaying part
never enters a quadrature.

Integrals are computed in the variable ``u = log t`` with an adaptive
Gauss-Kronrod (7/15) panel rule that handles vector-valued integrands, so
one panel layout serves a whole frequency grid.
"""

from __future__ import annotations

import functools
import math
import weakref
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .geometry import ANGLE_TOL, TWO_PI, SectorSet, angles_equal

DEFAULT_QUAD_TOL = 1e-10
DEFAULT_SCAN_TOL = 1e-8
RESOLUTION_LIMIT = 1e-6
DEFAULT_MARGIN = 1e-4
DEFAULT_LINE = 0.5
MAX_TRUNCATION = 600.0
SOBOLEV_CONTEXT = "K^m_{1/2}(bd Omega) -> K^0_{1/2}(bd Omega)"


class MellinError(ValueError):
    pass


class OutOfStrip(MellinError):
    pass


class QuadratureNonConvergent(MellinError):
    pass


class DegenerateAngle(MellinError):
    pass


class ArityMismatch(MellinError):
    pass


# Kronrod 15-point nodes on [0, 1] (descending) and weights; Gauss 7-point weights
# for the odd-indexed nodes.
_XK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS = np.zeros(15)
GAUSS[1:7:2] = _WG[:3]
GAUSS[7] = _WG[3]
GAUSS[9:15:2] = _WG[2::-1]


def _panel_nodes(panels: np.ndarray):
    mid = 0.5 * (panels[:, 0] + panels[:, 1])
    half = 0.5 * (panels[:, 1] - panels[:, 0])
    return mid[:, None] + half[:, None] * NODES[None, :], half


def adaptive_panels(
    f: Callable[[np.ndarray], np.ndarray],
    edges: Sequence[float],
    tol: float | np.ndarray,
    max_panels: int = 40000,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate a vector-valued ``f`` over ``[edges[0], edges[-1]]``.

    ``f`` maps a 1-d array of abscissae of length m to an array of shape
    ``(m, K)``.  A panel is accepted once its Kronrod-Gauss difference is
    below its share of ``tol`` in every component (``tol`` may be per
    component).  Returns the sorted accepted panels and the integral.
    """
    edges = np.unique(np.asarray(edges, dtype=float))
    total = float(edges[-1] - edges[0])
    if total <= 0:
        raise MellinError("empty integration range")
    tol = np.asarray(tol, dtype=float)
    pending = np.column_stack([edges[:-1], edges[1:]])
    accepted: list[np.ndarray] = []
    sums: list[np.ndarray] = []
    count = 0
    while len(pending):
        u, half = _panel_nodes(pending)
        vals = np.asarray(f(u.ravel()))
        vals = vals.reshape(len(pending), 15, -1)
        kron = np.einsum("j,pjk->pk", KRONROD, vals) * half[:, None]
        gauss = np.einsum("j,pjk->pk", GAUSS, vals) * half[:, None]
        if not np.all(np.isfinite(kron)):
            raise QuadratureNonConvergent("integrand is not finite on the truncated range")
        share = (2 * half / total)[:, None] * tol
        err = np.abs(kron - gauss)
        tiny = 2 * half < 1e-13 * total
        ok = np.all(err <= share, axis=1) | tiny
        accepted.append(pending[ok])
        sums.append(kron[ok])
        count += int(ok.sum())
        bad = pending[~ok]
        mid = 0.5 * (bad[:, 0] + bad[:, 1])
        pending = np.concatenate([
            np.column_stack([bad[:, 0], mid]),
            np.column_stack([mid, bad[:, 1]]),
        ])
        if count + len(pending) > max_panels:
            raise QuadratureNonConvergent(f"more than {max_panels} panels needed")
    panels = np.concatenate(accepted)
    values = np.concatenate(sums)
    order = np.argsort(panels[:, 0], kind="stable")
    return panels[order], values[order].sum(axis=0)


@dataclass(frozen=True)
class DecayBound:
    """``|kappa(t)| <= c0 t^p0`` on (0, 1] and ``<= cinf t^(-pinf)`` on [1, inf)."""

    c0: float
    p0: float
    cinf: float
    pinf: float

    def __post_init__(self):
        if min(self.c0, self.cinf) < 0:
            raise MellinError("decay constants must be nonnegative")
        if self.p0 + self.pinf <= 0:
            raise MellinError("decay exponents leave an empty strip")

    @property
    def strip(self) -> tuple[float, float]:
        return (-self.p0, self.pinf)

    @property
    def envelope_constant(self) -> float:
        return max(self.c0, self.cinf)

    def contains(self, a: float) -> bool:
        lo, hi = self.strip
        return lo < a < hi

    def truncation(self, a: float, tol: float) -> tuple[float, float]:
        """Range ``[-U0, Uinf]`` in ``u = log t`` whose two tails are each below ``tol/10``."""
        if not self.contains(a):
            raise OutOfStrip(f"Re z = {a:g} outside the strip {self.strip}")

        def one(c, rate):
            if c == 0 or math.isinf(rate):
                return 1.0
            u = math.log(10 * c / (rate * tol)) / rate
            if u > MAX_TRUNCATION:
                raise QuadratureNonConvergent(f"tail bound needs truncation at |u| = {u:.3g}")
            return max(1.0, u)

        return one(self.c0, self.p0 + a), one(self.cinf, self.pinf - a)


@dataclass(frozen=True, eq=False)
class ScalarKernel:
    """Real kernel ``kappa`` on ``(0, inf)`` with a decay certificate.

    ``breakpoints`` lists points where ``kappa`` is not smooth or sharply
    peaked; ``support`` restricts integration to a compact interval.
    """

    func: Callable[[np.ndarray], np.ndarray]
    decay: DecayBound
    name: str = "kernel"
    breakpoints: tuple[float, ...] = ()
    support: tuple[float, float] | None = None

    def __call__(self, t) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)

    @property
    def strip(self) -> tuple[float, float]:
        if self.support is not None:
            return (-math.inf, math.inf)
        return self.decay.strip

    def u_range(self, a: float, tol: float) -> tuple[float, float]:
        if self.support is not None:
            return math.log(self.support[0]), math.log(self.support[1])
        lo, hi = self.decay.truncation(a, tol)
        return -lo, hi

    def scaled(self, lam: float) -> "ScalarKernel":
        """The kernel ``t -> kappa(lam t)``."""
        if lam <= 0:
            raise MellinError("scale must be positive")
        d = self.decay
        support = None
        if self.support is not None:
            support = (self.support[0] / lam, self.support[1] / lam)
            decay = d
        else:
            # on the part of (0, 1] that lam pushes past 1 only the envelope bound applies
            big = d.envelope_constant
            c0 = (big if lam > 1 else d.c0) * lam ** d.p0
            cinf = (big if lam < 1 else d.cinf) * lam ** -d.pinf
            decay = DecayBound(c0, d.p0, cinf, d.pinf)
        return ScalarKernel(
            lambda t, f=self.func: f(lam * t),
            decay,
            f"{self.name}(x{lam:g})",
            tuple(b / lam for b in self.breakpoints),
            support,
        )

    def __mul__(self, alpha: float) -> "ScalarKernel":
        d = self.decay
        s = abs(alpha)
        return ScalarKernel(
            lambda t, f=self.func: alpha * f(t),
            DecayBound(s * d.c0, d.p0, s * d.cinf, d.pinf),
            f"{alpha:g}*{self.name}",
            self.breakpoints,
            self.support,
        )

    __rmul__ = __mul__

    def __add__(self, other: "ScalarKernel") -> "ScalarKernel":
        d1, d2 = self.decay, other.decay
        if self.support is not None and other.support is not None:
            support = (min(self.support[0], other.support[0]), max(self.support[1], other.support[1]))
        else:
            support = None
            # a compactly supported summand still needs honest bounds here
        return ScalarKernel(
            lambda t, f=self.func, g=other.func: f(t) + g(t),
            DecayBound(d1.c0 + d2.c0, min(d1.p0, d2.p0), d1.cinf + d2.cinf, min(d1.pinf, d2.pinf)),
            f"{self.name}+{other.name}",
            tuple(sorted(set(self.breakpoints) | set(other.breakpoints))),
            support,
        )


def _edges(kappa: ScalarKernel, lo: float, hi: float) -> list[float]:
    inner = [math.log(b) for b in kappa.breakpoints if b > 0 and lo < math.log(b) < hi]
    pieces = max(4, int(math.ceil((hi - lo) / 2.0)))
    return sorted(set(np.linspace(lo, hi, pieces + 1).tolist()) | set(inner))


@dataclass
class _Prepared:
    """Panel layout of one kernel on one line, reusable for any frequency up to ``xi_max``."""

    u: np.ndarray
    g: np.ndarray
    grids: dict = field(default_factory=dict, repr=False)

    def evaluate(self, xi: np.ndarray, chunk: int = 2_000_000) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        step = _uniform_step(xi)
        if step is not None:
            key = xi.tobytes()
            if key not in self.grids:
                self.grids[key] = self._evaluate_grid(xi, step)
            return self.grids[key].copy()
        out = np.empty(len(xi), dtype=complex)
        step = max(1, chunk // max(1, len(self.u)))
        for s in range(0, len(xi), step):
            phase = np.outer(self.u, xi[s:s + step])
            out[s:s + step] = self.g @ np.cos(phase) + 1j * (self.g @ np.sin(phase))
        return out

    def _evaluate_grid(self, xi: np.ndarray, h: float) -> np.ndarray:
        n = len(xi)
        if abs(xi[0] + xi[-1]) <= 1e-12 * h:
            # symmetric grid: g is real, so the negative half is the conjugate mirror
            half = self._evaluate_uniform(float(xi[n // 2]), h, n - n // 2)
            return np.concatenate([half[n % 2:][::-1].conj(), half]) if n > 1 else half
        return self._evaluate_uniform(float(xi[0]), h, n)

    def _evaluate_uniform(self, x0: float, h: float, n: int) -> np.ndarray:
        # exp(iu(x0 + (jB + b)h)) splits into a row factor and a column factor,
        # so the whole grid costs one matrix product and O(sqrt n) exponentials per node
        b = math.isqrt(n - 1) + 1
        blocks = -(-n // b)
        cols = np.exp(1j * np.outer(self.u, h * np.arange(b)))
        rows = self.g[None, :] * np.exp(1j * np.outer(x0 + h * b * np.arange(blocks), self.u))
        return (rows @ cols).ravel()[:n]


def _uniform_step(xi: np.ndarray) -> float | None:
    if len(xi) < 64:
        return None
    h = (xi[-1] - xi[0]) / (len(xi) - 1)
    if h > 0 and np.allclose(np.diff(xi), h, rtol=1e-9, atol=0.0):
        return float(h)
    return None


_PREPARED: "weakref.WeakKeyDictionary[ScalarKernel, dict]" = weakref.WeakKeyDictionary()


def _prepare(kappa: ScalarKernel, a: float, xi_max: float, tol: float) -> _Prepared:
    per_kernel = _PREPARED.setdefault(kappa, {})
    key = (a, xi_max, tol)
    if key not in per_kernel:
        per_kernel[key] = _build_prepared(kappa, a, xi_max, tol)
    return per_kernel[key]


def _build_prepared(kappa: ScalarKernel, a: float, xi_max: float, tol: float) -> _Prepared:
    lo, hi = kappa.u_range(a, tol)
    probes = np.linspace(0.0, abs(xi_max), 9) if xi_max else np.zeros(1)

    def f(u):
        base = kappa(np.exp(u)) * np.exp(a * u)
        return base[:, None] * np.exp(1j * np.outer(u, probes))

    panels, _ = adaptive_panels(f, _edges(kappa, lo, hi), 0.8 * tol)
    u, half = _panel_nodes(panels)
    w = (half[:, None] * KRONROD[None, :]).ravel()
    u = u.ravel()
    return _Prepared(u, kappa(np.exp(u)) * np.exp(a * u) * w)


def mellin_transform(kappa: ScalarKernel, z: complex, tol: float = DEFAULT_QUAD_TOL) -> complex:
    """``int_0^inf kappa(t) t^(z-1) dt`` to absolute accuracy ``tol``."""
    z = complex(z)
    lo, hi = kappa.strip
    if not lo < z.real < hi:
        raise OutOfStrip(f"Re z = {z.real:g} outside the strip ({lo:g}, {hi:g})")
    p = _prepare(kappa, z.real, z.imag, tol)
    return complex(p.evaluate(np.array([z.imag]))[0])


def multiplicative_convolution(
    k1: ScalarKernel, k2: ScalarKernel, eta: float = 0.1, tol: float = 1e-13,
) -> ScalarKernel:
    """Kernel ``t -> int_0^inf k1(t/s) k2(s) ds/s`` evaluated by quadrature.

    The certificate uses ``|k1(t)| <= B1 t^q`` for every ``q`` in
    ``[-pinf1, p0_1]`` together with the Mellin bound of ``|k2|`` at ``-q``,
    with exponents shrunk by ``eta`` to stay inside the strips.
    """
    d1, d2 = k1.decay, k2.decay
    if k1.support is not None or k2.support is not None:
        raise MellinError("convolution of compactly supported kernels is not supported")
    b1 = d1.envelope_constant
    q0 = min(d1.p0, d2.p0) - eta
    qinf = min(d1.pinf, d2.pinf) - eta
    if q0 + qinf <= 0 or q0 < -d1.pinf or qinf < -d1.p0:
        raise MellinError("strips of the factors do not overlap")

    def abs_mellin2(x):
        return d2.c0 / (d2.p0 + x) + d2.cinf / (d2.pinf - x)

    decay = DecayBound(b1 * abs_mellin2(-q0), q0, b1 * abs_mellin2(qinf), qinf)
    r_hi = d1.p0 + d2.pinf
    r_lo = d1.pinf + d2.p0

    def func(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        logt = np.log(t)
        # both tails below tol * envelope(t), so relative accuracy survives the outer weight
        env = np.minimum(np.exp(q0 * logt), np.exp(-qinf * logt))
        target = tol * env
        hi = lo = 1.0
        if d2.cinf > 0:
            hi = np.max((np.log(10 * b1 * d2.cinf / (r_hi * target)) + d1.p0 * logt) / r_hi)
        if d2.c0 > 0:
            lo = np.max((np.log(10 * b1 * d2.c0 / (r_lo * target)) - d1.pinf * logt) / r_lo)
        lo, hi = -max(lo, 1.0), max(hi, 1.0)
        if max(-lo, hi) > MAX_TRUNCATION:
            raise QuadratureNonConvergent("convolution tail bound not met")

        def g(v):
            with np.errstate(over="ignore"):
                return k1(t[None, :] * np.exp(-v)[:, None]) * k2(np.exp(v))[:, None]

        edges = sorted(set(np.linspace(lo, hi, 33).tolist()) | {0.0})
        _, val = adaptive_panels(g, edges, 0.8 * target)
        return val

    return ScalarKernel(func, decay, f"({k1.name})*({k2.name})", (1.0,))


# --- presets -------------------------------------------------------------------------

def exponential_kernel(pinf: float = 4.0) -> ScalarKernel:
    """``kappa(t) = exp(-t)``; its Mellin transform is the Gamma function."""
    return ScalarKernel(
        lambda t: np.exp(-t), DecayBound(1.0, 0.0, (pinf / math.e) ** pinf, pinf), "exp(-t)",
    )


def indicator_kernel(lo: float, hi: float) -> ScalarKernel:
    if not 0 < lo < hi:
        raise MellinError("indicator needs 0 < lo < hi")
    return ScalarKernel(
        lambda t: ((t >= lo) & (t <= hi)).astype(float),
        DecayBound(0.0, math.inf, 0.0, math.inf),
        f"1[{lo:g},{hi:g}]",
        (lo, hi),
        (lo, hi),
    )


def ray_pair_kernel(psi: float, sign: float = 1.0) -> ScalarKernel | None:
    """Double-layer interaction of two rays meeting at angle ``psi``.

    ``sign/(2 pi) * t sin(psi) / (t^2 + 1 - 2 t cos(psi))``, which is symmetric
    under ``t -> 1/t`` and bounded by ``C min(t, 1/t)``.  Returns ``None`` when
    the rays are opposite (the kernel vanishes identically).  Kernels are
    memoized so equal angles share one object, and hence one quadrature.
    """
    psi = psi % TWO_PI
    if angles_equal(psi, 0.0):
        raise DegenerateAngle("rays coincide; the kernel concentrates at t = 1")
    return _ray_pair_kernel(round(psi, 12), float(sign))


@functools.lru_cache(maxsize=256)
def _ray_pair_kernel(psi: float, sign: float) -> ScalarKernel | None:
    if abs(psi - math.pi) <= ANGLE_TOL:
        return None
    s, c = math.sin(psi), math.cos(psi)
    dmin = 1.0 if c <= 0 else s * s
    bound = abs(s) / (TWO_PI * dmin)
    coef = sign * s / TWO_PI
    return ScalarKernel(
        lambda t: coef * t / (t * t + 1.0 - 2.0 * t * c),
        DecayBound(bound, 1.0, bound, 1.0),
        f"ray({psi:.9g})",
        (1.0,),
    )


@dataclass(frozen=True, eq=False)
class MellinKernel:
    """Matrix kernel ``constant_part + (kappa_ij)``; ``None`` entries vanish."""

    entries: tuple[tuple[ScalarKernel | None, ...], ...]
    constant_part: np.ndarray
    name: str = "kernel"

    def __post_init__(self):
        k = len(self.entries)
        if any(len(row) != k for row in self.entries):
            raise MellinError("kernel matrix must be square")
        c = np.asarray(self.constant_part, dtype=complex)
        if c.shape != (k, k):
            raise MellinError("constant part has the wrong shape")
        object.__setattr__(self, "constant_part", c)

    @property
    def size(self) -> int:
        return len(self.entries)

    def decay_ok(self, a: float) -> bool:
        return all(
            e is None or e.strip[0] < a < e.strip[1] for row in self.entries for e in row
        )


def identity_kernel(k: int = 1) -> MellinKernel:
    return MellinKernel(tuple((None,) * k for _ in range(k)), np.eye(k), "identity")


def wedge_double_layer_kernel(theta: float, constant: float = 0.5) -> MellinKernel:
    """``constant * I`` plus the double-layer kernel of an infinite wedge of opening ``theta``."""
    if not ANGLE_TOL < theta < TWO_PI - ANGLE_TOL:
        raise DegenerateAngle(f"opening {theta!r} too close to 0 or 2 pi")
    off = ray_pair_kernel(theta)
    return MellinKernel(((None, off), (off, None)), constant * np.eye(2), f"wedge({theta:.9g})")


def double_layer_kernel(sectors: SectorSet, constant: float = 0.5) -> MellinKernel:
    """Double-layer kernel at a vertex whose cone base is ``sectors``.

    Boundary rays are ordered start, end per sector; the start ray of a
    sector carries sign +1 and the end ray -1 (orientation of the domain).
    """
    rays = []
    for s in sectors.sectors:
        rays.append((s.start, 1.0))
        rays.append((s.end, -1.0))
    rows = []
    for i, (phi_i, _) in enumerate(rays):
        rows.append(tuple(
            None if i == j else ray_pair_kernel(phi_i - phi_j, eps_j)
            for j, (phi_j, eps_j) in enumerate(rays)
        ))
    k = len(rays)
    return MellinKernel(tuple(rows), constant * np.eye(k), "double-layer")


# --- symbols and scans ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MellinSymbolSample:
    line: float
    xi_grid: np.ndarray
    values: np.ndarray
    constant_part: np.ndarray
    evaluator: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    quad_tol: float = DEFAULT_QUAD_TOL

    def __post_init__(self):
        xi = np.asarray(self.xi_grid, dtype=float)
        if xi.ndim != 1 or (len(xi) > 1 and np.any(np.diff(xi) <= 0)):
            raise MellinError("xi grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise MellinError("symbol values must be finite")

    @property
    def size(self) -> int:
        return self.constant_part.shape[0]


def _symbol_values(kern: MellinKernel, a: float, xi: np.ndarray, tol: float, prepared: dict):
    """Entrywise transforms.

    Uniform grids are evaluated directly; otherwise only ``|xi|`` is computed
    and negative frequencies follow by conjugation.
    """
    k = kern.size
    if _uniform_step(xi) is not None:
        mag, inverse, negative = xi, np.arange(len(xi)), np.zeros(len(xi), dtype=bool)
    else:
        mag, inverse = np.unique(np.abs(xi), return_inverse=True)
        negative = xi < 0
    out = np.zeros((len(xi), k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            e = kern.entries[i][j]
            if e is None:
                continue
            if id(e) not in prepared:
                prepared[id(e)] = _prepare(e, a, float(np.max(np.abs(mag))) if len(mag) else 0.0, tol)
            key = (id(e), mag.tobytes())
            if key not in prepared:
                prepared[key] = prepared[id(e)].evaluate(mag)
            v = prepared[key][inverse]
            out[:, i, j] = np.where(negative, v.conj(), v)
    return out


def symbol_on_line(
    kern: MellinKernel, a: float, xi_grid, tol: float = DEFAULT_QUAD_TOL,
    cache: dict | None = None,
) -> MellinSymbolSample:
    """Entrywise Mellin transforms at ``a + i xi``.

    ``cache`` may be shared between calls with the same line, grid and
    tolerance so that kernels common to several vertices are integrated once.
    """
    xi = np.asarray(xi_grid, dtype=float)
    for row in kern.entries:
        for e in row:
            if e is not None and not e.strip[0] < a < e.strip[1]:
                raise OutOfStrip(f"line {a:g} outside the strip of {e.name}")
    prepared: dict = {} if cache is None else cache
    values = _symbol_values(kern, a, xi, tol, prepared)

    def evaluator(x):
        x = np.asarray(x, dtype=float)
        if len(x) and np.max(np.abs(x)) > np.max(np.abs(xi)):
            return _symbol_values(kern, a, x, tol, {})
        return _symbol_values(kern, a, x, tol, prepared)

    return MellinSymbolSample(a, xi, values, kern.constant_part.copy(), evaluator, tol)


def closed_form_symbol(
    func: Callable[[np.ndarray], np.ndarray], constant, xi_grid, line: float = DEFAULT_LINE,
) -> MellinSymbolSample:
    """Sample of a symbol known in closed form; ``func`` maps xi to ``(n, k, k)`` values."""
    xi = np.asarray(xi_grid, dtype=float)
    return MellinSymbolSample(
        line, xi, np.asarray(func(xi), dtype=complex), np.asarray(constant, dtype=complex), func, 0.0,
    )


def synthetic_zero_symbol(xi_grid, k: int = 2) -> MellinSymbolSample:
    """Symbol ``i xi / (1 + i xi) I``, which vanishes at ``xi = 0``."""
    eye = np.eye(k)

    def values(x):
        x = np.asarray(x, dtype=float)
        return (-1.0 / (1.0 + 1j * x))[:, None, None] * eye[None]

    return closed_form_symbol(values, eye, xi_grid)


@dataclass(frozen=True)
class ScanResult:
    min_singular_value: float
    argmin_xi: float
    grid_resolution: float
    refined: bool
    error_bound: float
    constant_min_sv: float
    end_norm: float


def _min_sv(constant, values):
    return np.linalg.svd(constant[None] + values, compute_uv=False)[:, -1]


def invertibility_scan(
    s: MellinSymbolSample, tol: float = DEFAULT_SCAN_TOL, resolution_limit: float = RESOLUTION_LIMIT,
) -> ScanResult:
    """Smallest singular value of ``constant + values`` over the grid, refined near its minimum."""
    if tol <= 0:
        raise MellinError("tol must be positive")
    xi = np.asarray(s.xi_grid, dtype=float)
    sv = _min_sv(s.constant_part, s.values)
    i = int(np.argmin(sv))
    best, center = float(sv[i]), float(xi[i])
    if len(xi) > 1:
        gaps = np.diff(xi)
        spacing = float(max(gaps[max(i - 1, 0)], gaps[min(i, len(gaps) - 1)]))
        jump = float(np.max(np.abs(np.diff(sv)))) / 2
    else:
        spacing, jump = math.inf, 0.0
    refined = False
    if s.evaluator is not None and len(xi) > 1:
        while spacing >= resolution_limit:
            local = center + np.linspace(-spacing, spacing, 21)
            lsv = _min_sv(s.constant_part, np.asarray(s.evaluator(local), dtype=complex))
            j = int(np.argmin(lsv))
            if lsv[j] < best:
                best, center = float(lsv[j]), float(local[j])
            spacing /= 10
            refined = True
    ends = s.values[[0, -1]] if len(xi) else np.zeros((1, s.size, s.size))
    end_norm = float(max(np.linalg.norm(m, 2) for m in ends))
    const_sv = float(np.linalg.svd(s.constant_part, compute_uv=False)[-1])
    return ScanResult(
        best, center, spacing, refined, jump + s.size * s.quad_tol, const_sv, end_norm,
    )


def vertex_verdict(
    scan: ScanResult | None, tol: float = DEFAULT_SCAN_TOL, decay_ok: bool = True,
    margin: float = DEFAULT_MARGIN, resolution_limit: float = RESOLUTION_LIMIT,
) -> str:
    """'zero', 'invertible' or 'inconclusive'."""
    if scan is None:
        return "inconclusive"
    if scan.min_singular_value < tol and scan.grid_resolution < resolution_limit:
        return "zero"
    if (
        decay_ok
        and scan.min_singular_value - scan.error_bound > margin
        and scan.constant_min_sv - scan.end_norm > margin
    ):
        return "invertible"
    return "inconclusive"


@dataclass(frozen=True)
class VertexScan:
    vertex_id: str
    scan: ScanResult | None
    verdict: str
    note: str = ""


@dataclass(frozen=True)
class FredholmReport:
    elliptic: bool
    per_vertex: tuple[VertexScan, ...]
    overall: str
    sobolev_context: str = SOBOLEV_CONTEXT
    parameters: tuple[tuple[str, float], ...] = ()


def fredholm_verdict(
    elliptic: bool,
    vertex_symbols: Sequence[MellinSymbolSample | None],
    tol: float = DEFAULT_SCAN_TOL,
    decay_ok: Sequence[bool] | None = None,
    vertex_ids: Sequence[str] | None = None,
    margin: float = DEFAULT_MARGIN,
    notes: Sequence[str] | None = None,
) -> FredholmReport:
    """Compose per-vertex scans into an overall verdict.

    A ``None`` symbol marks a vertex whose indicial operator could not be
    built; it is reported as inconclusive.
    """
    n = len(vertex_symbols)
    ids = list(vertex_ids) if vertex_ids is not None else [f"v{i + 1}" for i in range(n)]
    flags = list(decay_ok) if decay_ok is not None else [True] * n
    notes = list(notes) if notes is not None else [""] * n
    if not len(ids) == len(flags) == len(notes) == n:
        raise ArityMismatch(f"{n} symbols for {len(ids)} vertices")
    rows = []
    for vid, sample, ok, note in zip(ids, vertex_symbols, flags, notes):
        scan = invertibility_scan(sample, tol) if sample is not None else None
        rows.append(VertexScan(vid, scan, vertex_verdict(scan, tol, ok, margin), note))
    verdicts = [r.verdict for r in rows]
    if not elliptic or "zero" in verdicts:
        overall = "NotFredholm"
    elif all(v == "invertible" for v in verdicts):
        overall = "Fredholm"
    else:
        overall = "Inconclusive"
    return FredholmReport(bool(elliptic), tuple(rows), overall, SOBOLEV_CONTEXT,
                          (("tol", tol), ("margin", margin)))
