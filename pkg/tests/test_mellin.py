import cmath
import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from layerpot.geometry import SectorSet
from layerpot.mellin import (
    ArityMismatch, DecayBound, DegenerateAngle, OutOfStrip, QuadratureNonConvergent,
    ScalarKernel, closed_form_symbol, double_layer_kernel, exponential_kernel,
    fredholm_verdict, identity_kernel, indicator_kernel, invertibility_scan, mellin_transform,
    multiplicative_convolution, symbol_on_line, synthetic_zero_symbol, vertex_verdict,
    wedge_double_layer_kernel,
)

PI = math.pi
TOL = 1e-10


def quad_oracle(f, z):
    """Mellin transform by scipy on (0, 1] and [1, inf), real and imaginary parts separately."""
    def part(fn):
        a = integrate.quad(fn, 0, 1, limit=400, epsabs=1e-13, epsrel=1e-13)[0]
        b = integrate.quad(fn, 1, np.inf, limit=400, epsabs=1e-13, epsrel=1e-13)[0]
        return a + b
    re = part(lambda t: (f(t) * t ** (z - 1)).real)
    im = part(lambda t: (f(t) * t ** (z - 1)).imag)
    return complex(re, im)


def wedge_closed_form(theta, z):
    return 0.5 * cmath.sin(z * (PI - theta)) / cmath.sin(PI * z)


def off_diagonal(theta):
    return wedge_double_layer_kernel(theta).entries[0][1]


# --- transforms -----------------------------------------------------------------------

def test_exponential_against_mpmath():
    val = mellin_transform(exponential_kernel(), 0.5)
    oracle = mpmath.quad(lambda t: mpmath.exp(-t) * t ** -0.5, [0, 1, mpmath.inf])
    assert abs(val - complex(oracle)) < 1e-8
    assert abs(val - math.sqrt(PI)) < 1e-8


@pytest.mark.parametrize("z", [0.3, 1.5 + 2j, 3.5 - 1j])
def test_exponential_is_gamma(z):
    assert abs(mellin_transform(exponential_kernel(), z) - complex(mpmath.gamma(z))) < 1e-8


@pytest.mark.parametrize("z", [0.5, 0.5 + 3j, 0.2 - 1j])
def test_wedge_entry_against_oracles(z):
    val = mellin_transform(off_diagonal(PI / 2), z)
    assert abs(val - quad_oracle(lambda t: t / (t * t + 1) / (2 * PI), z)) < 1e-8
    assert abs(val - (PI / (2 * cmath.cos(PI * z / 2))) / (2 * PI)) < 1e-9


def test_wedge_value_at_half():
    assert abs(mellin_transform(off_diagonal(PI / 2), 0.5) - 0.3535534) < 1e-7


@pytest.mark.parametrize("lo,hi,z", [(0.5, 3.0, 0.3 + 2j), (1.0, 2.0, -1.5), (0.1, 0.2, 2j)])
def test_indicator(lo, hi, z):
    assert abs(mellin_transform(indicator_kernel(lo, hi), z) - (hi ** z - lo ** z) / z) < 1e-10


def test_linearity():
    k1, k2 = exponential_kernel(), off_diagonal(PI / 3)
    z = 0.5 + 1.5j
    combo = 2.0 * k1 + (-0.5) * k2
    want = 2.0 * mellin_transform(k1, z) - 0.5 * mellin_transform(k2, z)
    assert abs(mellin_transform(combo, z) - want) < 2 * TOL * 3


@pytest.mark.parametrize("lam", [0.5, 2.0, 10.0])
@pytest.mark.parametrize("kernel", [exponential_kernel(), off_diagonal(PI / 2)], ids=["exp", "wedge"])
def test_scaling_law(kernel, lam):
    z = 0.5 + 0.75j
    lhs = mellin_transform(kernel.scaled(lam), z)
    assert abs(lhs - lam ** -z * mellin_transform(kernel, z)) < 1e-8


def test_scaled_decay_bound_holds():
    k = exponential_kernel().scaled(10.0)
    t = np.logspace(-6, 3, 2000)
    d = k.decay
    bound = np.where(t <= 1, d.c0 * t ** d.p0, d.cinf * t ** -d.pinf)
    assert np.all(np.abs(k(t)) <= bound * (1 + 1e-12))


@pytest.mark.parametrize("pair", ["exp*wedge", "wedge*wedge"])
def test_convolution_theorem(pair):
    k1 = exponential_kernel() if pair == "exp*wedge" else off_diagonal(PI / 3)
    k2 = off_diagonal(PI / 2)
    conv = multiplicative_convolution(k1, k2)
    for t in (0.1, 1.0, 7.0):
        direct = integrate.quad(lambda s: float(k1(t / s) * k2(s)) / s, 0, np.inf, limit=400)[0]
        assert abs(float(conv(np.array([t]))[0]) - direct) < 1e-8
    for z in (0.5, 0.5 + 2j):
        prod = mellin_transform(k1, z) * mellin_transform(k2, z)
        assert abs(mellin_transform(conv, z) - prod) < 1e-6


def test_conjugate_symmetry():
    k = off_diagonal(PI / 3)
    for xi in (0.5, 3.0, 17.0):
        a = mellin_transform(k, 0.5 + 1j * xi)
        b = mellin_transform(k, 0.5 - 1j * xi)
        assert abs(a - b.conjugate()) < 2 * TOL


def test_out_of_strip():
    with pytest.raises(OutOfStrip):
        mellin_transform(off_diagonal(PI / 2), 1.5)
    with pytest.raises(OutOfStrip):
        mellin_transform(exponential_kernel(), -0.1)


def test_non_convergent_tail():
    slow = ScalarKernel(lambda t: t ** 1e-3 / (1 + t), DecayBound(1.0, 1e-3, 1.0, 1.0), "slow")
    with pytest.raises(QuadratureNonConvergent):
        mellin_transform(slow, -1e-3 + 1e-7)


# --- wedge presets ----------------------------------------------------------------------

def test_wedge_kernel_formulas():
    t = np.logspace(-3, 3, 50)
    np.testing.assert_allclose(off_diagonal(PI / 2)(t), t / (t * t + 1) / (2 * PI), rtol=1e-12)
    np.testing.assert_allclose(
        off_diagonal(PI / 3)(t), math.sqrt(3) / (4 * PI) * t / (t * t - t + 1), rtol=1e-12,
    )
    flat = wedge_double_layer_kernel(PI)
    assert all(e is None for row in flat.entries for e in row)
    assert wedge_double_layer_kernel(PI / 2).entries[0][0] is None


@pytest.mark.parametrize("theta", [0.0, 1e-12, 2 * PI, 2 * PI - 1e-12])
def test_degenerate_angles(theta):
    with pytest.raises(DegenerateAngle):
        wedge_double_layer_kernel(theta)


def test_full_turn_sector_is_degenerate():
    with pytest.raises(DegenerateAngle):
        double_layer_kernel(SectorSet.from_pairs([(0.0, 0.0)]))


@pytest.mark.parametrize("theta", [PI / 3, PI / 2, 3 * PI / 2, 1.9 * PI])
def test_general_kernel_matches_wedge(theta):
    grid = np.linspace(-5, 5, 11)
    a = symbol_on_line(double_layer_kernel(SectorSet.from_pairs([(0.7, 0.7 + theta)])), 0.5, grid)
    b = symbol_on_line(wedge_double_layer_kernel(theta), 0.5, grid)
    np.testing.assert_allclose(a.values, b.values, atol=1e-9)


@pytest.mark.parametrize("theta", [PI / 3, PI / 2, 3 * PI / 2])
def test_wedge_symbol_against_closed_form(theta):
    grid = np.linspace(-10, 10, 41)
    s = symbol_on_line(wedge_double_layer_kernel(theta), 0.5, grid)
    want = np.array([wedge_closed_form(theta, 0.5 + 1j * x) for x in grid])
    np.testing.assert_allclose(s.values[:, 0, 1], want, atol=1e-9)
    np.testing.assert_allclose(s.values[:, 1, 0], want, atol=1e-9)


# --- symbols and scans -------------------------------------------------------------------

def test_identity_symbol():
    s = symbol_on_line(identity_kernel(2), 0.5, np.linspace(-1, 1, 5))
    assert np.all(s.values == 0)
    r = invertibility_scan(s)
    assert r.min_singular_value == pytest.approx(1.0)
    assert vertex_verdict(r) == "invertible"


def test_riemann_lebesgue_envelope():
    grid = np.linspace(-40, 40, 801)
    s = symbol_on_line(wedge_double_layer_kernel(PI / 3), 0.5, grid)
    mag = np.abs(s.values[:, 0, 1])
    assert mag[0] < 1e-6 and mag[-1] < 1e-6
    assert mag[np.abs(grid) >= 30].max() <= mag[np.abs(grid) <= 10].max()


def test_wedge_scan_is_invertible():
    s = symbol_on_line(wedge_double_layer_kernel(PI / 2), 0.5, np.linspace(-40, 40, 4001))
    r = invertibility_scan(s)
    # eigenvalues are 1/2 +- m(xi); the closed form peaks at xi = 0
    assert r.min_singular_value == pytest.approx(0.5 - math.sqrt(2) / 4, abs=1e-9)
    assert r.min_singular_value > 0.1 and r.refined
    assert vertex_verdict(r) == "invertible"


def test_scan_stability_under_halving():
    kern = wedge_double_layer_kernel(2.5)
    fine = invertibility_scan(symbol_on_line(kern, 0.5, np.linspace(-40, 40, 4001)))
    coarse = invertibility_scan(symbol_on_line(kern, 0.5, np.linspace(-40, 40, 2001)))
    assert abs(fine.min_singular_value - coarse.min_singular_value) < max(fine.error_bound, coarse.error_bound)


def test_synthetic_zero_is_certified():
    s = synthetic_zero_symbol(np.linspace(-40, 40, 4001))
    r = invertibility_scan(s)
    assert r.min_singular_value < 1e-8 and abs(r.argmin_xi) < 1e-4 and r.grid_resolution < 1e-6
    assert vertex_verdict(r) == "zero"


def test_unresolved_small_value_is_inconclusive():
    # a symbol dipping to 1e-9 between grid points without an evaluator cannot be certified
    grid = np.linspace(-1, 1, 3)
    s = closed_form_symbol(lambda x: np.full((len(x), 1, 1), -1 + 1e-9 + 0j), np.eye(1), grid)
    s = type(s)(s.line, s.xi_grid, s.values, s.constant_part, None, 0.0)
    assert vertex_verdict(invertibility_scan(s)) == "inconclusive"


def test_fredholm_verdicts():
    grid = np.linspace(-40, 40, 4001)
    wedge = symbol_on_line(wedge_double_layer_kernel(PI / 2), 0.5, grid)
    zero = synthetic_zero_symbol(grid)
    assert fredholm_verdict(True, [wedge]).overall == "Fredholm"
    assert fredholm_verdict(False, [wedge]).overall == "NotFredholm"
    assert fredholm_verdict(True, [wedge, zero]).overall == "NotFredholm"
    assert fredholm_verdict(True, [wedge, None]).overall == "Inconclusive"
    with pytest.raises(ArityMismatch):
        fredholm_verdict(True, [wedge], vertex_ids=["a", "b"])


def test_verdict_monotone_in_ellipticity():
    grid = np.linspace(-40, 40, 401)
    order = {"Fredholm": 2, "Inconclusive": 1, "NotFredholm": 0}
    samples = [
        [symbol_on_line(wedge_double_layer_kernel(PI / 2), 0.5, grid)],
        [synthetic_zero_symbol(grid)],
        [None],
    ]
    for syms in samples:
        assert order[fredholm_verdict(False, syms).overall] <= order[fredholm_verdict(True, syms).overall]


def test_deterministic_symbols():
    grid = np.linspace(-40, 40, 401)
    a = symbol_on_line(wedge_double_layer_kernel(1.0), 0.5, grid).values
    b = symbol_on_line(wedge_double_layer_kernel(1.0), 0.5, grid[::-1][::-1].copy()).values
    assert np.array_equal(a, b)


@pytest.mark.parametrize("grid", [
    np.linspace(-40, 40, 4001), np.linspace(-40, 40, 4000), np.linspace(-10, 40, 500), np.linspace(-3, 3, 64),
], ids=["odd", "even", "asymmetric", "small"])
def test_grid_evaluation_matches_direct_sum(grid):
    # the factored and mirrored fast paths must agree with the plain quadrature sum
    from layerpot.mellin import _prepare
    p = _prepare(off_diagonal(1.1), 0.5, 40.0, TOL)
    direct = p.g @ np.exp(1j * np.outer(p.u, grid))
    np.testing.assert_allclose(p.evaluate(grid), direct, atol=1e-13, rtol=0)
