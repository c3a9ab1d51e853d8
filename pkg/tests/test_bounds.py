import math
import random

import pytest

from helpers import CORPUS
from msquad.bounds import (
    DerivativeRange,
    SecantSlope,
    composite_bound_k6,
    composite_bounds,
    estimate_derivative_range,
    midpoint_bounds,
    panel_bound_k6,
    panel_bounds,
    secant_slope,
    simpson_classic_bound,
    unit_bounds,
)
from msquad.errors import InvalidRangeError, SlopeInconsistencyError
from msquad.integrand import Integrand, Interval, UniformGrid
from msquad.kernels import kernel_abs_integral, scaled_constants
from msquad.reference import reference_integral
from msquad.rules import composite_modified_simpson, modified_simpson_panel

UNIT = Interval(0.0, 1.0)
EXP = Integrand.from_callables(math.exp, *[math.exp] * 6)


def true_panel_error(f: Integrand, iv: Interval) -> float:
    ref = reference_integral(f, iv, tol=1e-13).value
    return ref - modified_simpson_panel(f, iv)


# -- unit-interval bounds --------------------------------------------------------


def test_unit_bounds_vanish_for_constant_derivative():
    report = unit_bounds(4, DerivativeRange(4, 2.5, 2.5), SecantSlope(3, 2.5))
    assert report.range_bound == 0.0
    assert report.lower_gap_bound == 0.0
    assert report.upper_gap_bound == 0.0
    assert report.best == 0.0
    assert report.rigorous


def test_unit_bounds_exp_plugin():
    rng = DerivativeRange(2, 1.0, math.e)
    slope = SecantSlope(1, math.e - 1.0)
    report = unit_bounds(2, rng, slope)
    expected = (math.e - 1.0) / 2.0 * kernel_abs_integral(2)
    assert report.range_bound == pytest.approx(expected, rel=1e-15)
    assert report.range_bound == pytest.approx(7.028e-3, rel=1e-3)
    err = abs(true_panel_error(EXP, UNIT))
    assert err <= report.range_bound
    assert err <= report.lower_gap_bound
    assert err <= report.upper_gap_bound
    assert report.peano_classic == pytest.approx(math.e * kernel_abs_integral(2), rel=1e-15)
    assert report.range_bound <= report.peano_classic


def test_unit_bounds_sin_plugin():
    sin_f = CORPUS[2].integrand()
    rng = DerivativeRange(5, math.cos(1.0), 1.0)
    slope = SecantSlope(4, math.sin(1.0))
    report = unit_bounds(5, rng, slope)
    expected = (1.0 - math.cos(1.0)) / 2.0 / 115200.0
    assert report.range_bound == pytest.approx(expected, rel=1e-15)
    assert abs(true_panel_error(sin_f, UNIT)) <= report.best


def test_unit_bounds_validation():
    with pytest.raises(InvalidRangeError):
        DerivativeRange(2, 2.0, 1.0)
    with pytest.raises(SlopeInconsistencyError):
        unit_bounds(2, DerivativeRange(2, 0.0, 1.0), SecantSlope(1, 5.0))
    with pytest.raises(ValueError):
        unit_bounds(6, DerivativeRange(6, 0.0, 1.0), SecantSlope(5, 0.5))
    with pytest.raises(ValueError):
        unit_bounds(3, DerivativeRange(3, 0.0, 1.0), SecantSlope(1, 0.5))


def test_ulp_noise_on_tight_ranges_is_clamped():
    noisy = 1.0 + 2.0 * math.ulp(1.0)
    report = unit_bounds(4, DerivativeRange(4, 1.0, 1.0), SecantSlope(3, noisy))
    assert report.upper_gap_bound == 0.0
    assert 0.0 <= report.lower_gap_bound <= 1e-15


# -- panel and composite bounds ---------------------------------------------------


def test_panel_of_width_one_collapses_to_unit_bounds():
    kc = scaled_constants(4)
    assert kc.d * 0.5**5 == kernel_abs_integral(4)
    rng = DerivativeRange(4, -1.0, 2.0)
    slope = SecantSlope(3, 0.25)
    assert panel_bounds(4, rng, slope, 0.5) == unit_bounds(4, rng, slope)


def test_panel_bounds_exp_validity():
    iv = Interval(-1.0, 1.0)
    rng = DerivativeRange(2, 1.0 / math.e, math.e)
    slope = secant_slope(EXP, 1, iv)
    report = panel_bounds(2, rng, slope, 1.0)
    expected = 0.5 * (math.e - 1.0 / math.e) * scaled_constants(2).d
    assert report.range_bound == pytest.approx(expected, rel=1e-15)
    err = abs(true_panel_error(EXP, iv))
    assert err == pytest.approx(2.206e-4, rel=1e-3)
    assert err <= report.best


def test_panel_bounds_constant_fifth_derivative():
    report = panel_bounds(5, DerivativeRange(5, 3.0, 3.0), SecantSlope(4, 3.0), 0.7)
    assert report.range_bound == 0.0 and report.best == 0.0


def test_panel_bound_k6_with_tight_monomial():
    bound = panel_bound_k6(720.0, 1.0)
    true = 16.0 / 105.0  # exact panel error of x^6 on [-1, 1]
    assert bound == pytest.approx(true, rel=1e-15)
    assert bound >= true * (1.0 - 1e-15)
    assert panel_bound_k6(0.0, 2.0) == 0.0
    assert panel_bound_k6(math.e, 1.0) == pytest.approx(math.e / 4725.0, rel=1e-15)
    assert panel_bound_k6(math.e, 1.0) >= 2.206e-4
    with pytest.raises(ValueError):
        panel_bound_k6(-1.0, 1.0)


def test_composite_coefficient_matches_quarter_form():
    gamma, upper = -0.75, 2.0
    rng = DerivativeRange(4, gamma, upper)
    slope = SecantSlope(3, 0.5)
    report = composite_bounds(4, rng, slope, 0.125, 2.0)
    expected = 2.0 * (upper - gamma) / 3645.0 * 0.125**4 * 2.0
    assert report.range_bound == pytest.approx(expected, rel=1e-14)


def test_composite_single_pair_reproduces_panel_bitwise():
    rng = DerivativeRange(3, -0.5, 1.5)
    slope = SecantSlope(2, 0.3)
    h = 0.3
    assert composite_bounds(3, rng, slope, h, 2.0 * h) == panel_bounds(3, rng, slope, h)


def test_composite_bounds_validity_for_gauss():
    f = CORPUS[1].integrand()
    ref = reference_integral(f, UNIT, tol=1e-13).value
    grid = UniformGrid(UNIT, 2)
    true_err = abs(ref - composite_modified_simpson(f, grid).value)
    rng = estimate_derivative_range(f, 4, UNIT, n_samples=513, safety=1.0)
    slope = secant_slope(f, 3, UNIT)
    report = composite_bounds(4, rng, slope, grid.h, UNIT.width)
    assert true_err <= report.best
    assert not report.rigorous  # sampled range propagates the flag


def test_composite_bounds_rejects_mismatched_spacing():
    rng = DerivativeRange(2, 0.0, 1.0)
    slope = SecantSlope(1, 0.5)
    with pytest.raises(ValueError):
        composite_bounds(2, rng, slope, 0.3, 1.0)


def test_composite_bound_k6_values():
    assert composite_bound_k6(1.0, 1.0, 2.0) == pytest.approx(2.0 / 9450.0, rel=1e-15)
    assert composite_bound_k6(0.0, 0.5, 1.0) == 0.0
    f = CORPUS[1].integrand()
    grid = UniformGrid(UNIT, 2)
    ref = reference_integral(f, UNIT, tol=1e-13).value
    true_err = abs(ref - composite_modified_simpson(f, grid).value)
    sup6 = max(abs(f.derivative(6, x / 512)) for x in range(513))
    assert true_err <= composite_bound_k6(sup6, grid.h, 1.0)


# -- midpoint and Simpson comparison bounds ---------------------------------------


def test_midpoint_bounds_comparison():
    classic, corrected, corrected_h4 = midpoint_bounds(1.0, 0.0, 1.0)
    assert classic == pytest.approx(1.0 / 24.0, rel=1e-15)
    assert corrected == pytest.approx(1.0 / (18.0 * math.sqrt(3.0)), rel=1e-15)
    assert corrected < classic
    assert midpoint_bounds(0.0, 0.0, 3.0) == (0.0, 0.0, 0.0)
    assert midpoint_bounds(0.0, 1.0, 1.0)[2] == pytest.approx(7.0 / 5760.0, rel=1e-15)
    with pytest.raises(ValueError):
        midpoint_bounds(-1.0, 0.0, 1.0)


def test_simpson_classic_bound_values():
    assert simpson_classic_bound(1.0, 1.0, 2.0) == pytest.approx(1.0 / 90.0, rel=1e-15)
    assert simpson_classic_bound(0.0, 1.0, 2.0) == 0.0


@pytest.mark.parametrize("fn", CORPUS, ids=lambda c: c.name)
def test_range_bound_beats_simpson_bound(fn):
    # the quarter-form coefficient is below the classic Simpson constant
    f = fn.integrand()
    h = 0.25
    rng = estimate_derivative_range(f, 4, UNIT, n_samples=513, safety=1.0)
    slope = secant_slope(f, 3, UNIT)
    corrected = composite_bounds(4, rng, slope, h, 1.0).range_bound
    classic = simpson_classic_bound(rng.sup_abs, h, 1.0)
    assert corrected < classic


def test_dominance_and_equality_witness():
    rng_random = random.Random(2024)
    for _ in range(50):
        lo = rng_random.uniform(-5.0, 5.0)
        hi = lo + rng_random.uniform(0.0, 5.0)
        s = rng_random.uniform(lo, hi) if hi > lo else lo
        report = unit_bounds(3, DerivativeRange(3, lo, hi), SecantSlope(2, s))
        assert report.range_bound <= report.peano_classic * (1.0 + 1e-15)
    # equality holds exactly for ranges symmetric about zero
    sym = unit_bounds(3, DerivativeRange(3, -2.0, 2.0), SecantSlope(2, 0.0))
    assert sym.range_bound == sym.peano_classic


# -- range estimator ---------------------------------------------------------------


def test_estimator_brackets_exp_second_derivative():
    rng = estimate_derivative_range(EXP, 2, UNIT)
    assert rng.provenance == "sampled-estimate"
    assert not rng.rigorous
    assert rng.lower <= 1.0 <= math.e <= rng.upper
    assert 0.8 <= rng.lower and rng.upper <= 3.0


def test_estimator_exact_with_unit_safety_on_monotone_derivative():
    rng = estimate_derivative_range(EXP, 2, UNIT, n_samples=257, safety=1.0)
    assert rng.lower == pytest.approx(1.0, abs=1e-12)
    assert rng.upper == pytest.approx(math.e, abs=1e-12)


def test_estimator_constant_collapses_to_zero_width():
    const = Integrand.from_callables(lambda x: 5.0, *([lambda x: 0.0] * 6))
    for k in (1, 3, 6):
        rng = estimate_derivative_range(const, k, UNIT)
        assert (rng.lower, rng.upper) == (0.0, 0.0)


def test_estimator_brackets_sin_fourth_derivative():
    sin_f = CORPUS[2].integrand()
    rng = estimate_derivative_range(sin_f, 4, Interval(0.0, math.pi))
    assert rng.lower <= 0.0 and rng.upper >= 1.0


def test_estimator_validation():
    with pytest.raises(ValueError):
        estimate_derivative_range(EXP, 2, UNIT, n_samples=4)
    with pytest.raises(ValueError):
        estimate_derivative_range(EXP, 2, UNIT, safety=0.9)
    with pytest.raises(ValueError):
        estimate_derivative_range(EXP, 0, UNIT)


@pytest.mark.parametrize("fn", CORPUS, ids=lambda c: c.name)
def test_mean_value_sanity(fn):
    f = fn.integrand()
    for k in (2, 3, 4, 5):
        rng = estimate_derivative_range(f, k, UNIT, n_samples=257)
        s = secant_slope(f, k - 1, UNIT)
        assert rng.lower <= s.value <= rng.upper
