"""Single-panel and composite quadrature rules.

Four rules are provided: the midpoint rule, the endpoint-corrected
midpoint rule, Simpson's rule, and the endpoint-corrected Simpson rule
with weights 7/30, 16/30, 7/30 (exact for polynomials of degree 5).
Composite forms run over a :class:`~msquad.integrand.UniformGrid`; the
derivative corrections telescope, so only the two global endpoint
derivatives are ever evaluated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DerivativeUnavailableError
from .integrand import Integrand, Interval, UniformGrid
from .summation import pairwise_sum

# Per pair of subintervals the corrected Simpson error is, to leading
# order, h^6/9450 * [f^(5)(right) - f^(5)(left)]; summed over a grid the
# differences telescope to the global endpoints.  An exact-arithmetic
# check on x^6 over [-1, 1] (true error 16/105 = 1440/9450) pins the
# denominator at 9450.
LEADING_ERROR_DENOMINATOR = 9450.0


class Rule(enum.Enum):
    """Identifiers for the supported quadrature rules."""

    MIDPOINT = "midpoint"
    CORRECTED_MIDPOINT = "cmidpoint"
    SIMPSON = "simpson"
    MODIFIED_SIMPSON = "msimpson"


@dataclass(frozen=True)
class QuadResult:
    """Outcome of a composite rule application.

    ``leading_error_estimate`` is filled only when the integrand supplies
    derivative order 5 (corrected Simpson rule only).
    """

    value: float
    rule_id: Rule
    panels: int
    leading_error_estimate: float | None = None


def _simpson_pair(fa: float, fm: float, fb: float, h: float) -> float:
    return (h / 3.0) * (fa + 4.0 * fm + fb)


def _modified_pair(fa: float, fm: float, fb: float, h: float) -> float:
    return (h / 15.0) * (7.0 * fa + 16.0 * fm + 7.0 * fb)


def midpoint_panel(f: Integrand, iv: Interval) -> float:
    """Midpoint rule: ``(b - a) * f((a + b)/2)``; exact through degree 1."""
    return iv.width * f(iv.midpoint)


def corrected_midpoint_panel(f: Integrand, iv: Interval) -> float:
    """Midpoint rule plus the endpoint-derivative correction.

    ``(b-a) f(m) + (b-a)^2/24 * [f'(b) - f'(a)]``; exact through degree 3.
    """
    w = iv.width
    correction = (w * w / 24.0) * (f.derivative(1, iv.b) - f.derivative(1, iv.a))
    return w * f(iv.midpoint) + correction


def simpson_panel(f: Integrand, iv: Interval) -> float:
    """Simpson's rule ``(b-a)/6 * [f(a) + 4 f(m) + f(b)]``."""
    h = 0.5 * iv.width
    return _simpson_pair(f(iv.a), f(iv.midpoint), f(iv.b), h)


def modified_simpson_panel(f: Integrand, iv: Interval) -> float:
    """Endpoint-corrected Simpson rule, exact through degree 5.

    ``(b-a)/30 * [7 f(a) + 16 f(m) + 7 f(b)] - (b-a)^2/60 * [f'(b) - f'(a)]``
    """
    h = 0.5 * iv.width
    weighted = _modified_pair(f(iv.a), f(iv.midpoint), f(iv.b), h)
    correction = (h * h / 15.0) * (f.derivative(1, iv.b) - f.derivative(1, iv.a))
    return weighted - correction


def composite_simpson(f: Integrand, grid: UniformGrid) -> QuadResult:
    """Composite Simpson rule over the grid's pairs of subintervals."""
    xs = grid.nodes()
    fs = [f(x) for x in xs]
    h = grid.h
    pairs = [
        _simpson_pair(fs[j - 1], fs[j], fs[j + 1], h)
        for j in range(1, 2 * grid.n_pairs, 2)
    ]
    return QuadResult(
        value=pairwise_sum(pairs),
        rule_id=Rule.SIMPSON,
        panels=grid.n_pairs,
        leading_error_estimate=None,
    )


def composite_modified_simpson(f: Integrand, grid: UniformGrid) -> QuadResult:
    """Composite corrected Simpson rule.

    The per-pair derivative corrections telescope, so ``f'`` is evaluated
    at exactly two points (the global endpoints) regardless of the pair
    count.  With a single pair this reproduces
    :func:`modified_simpson_panel` bitwise.
    """
    xs = grid.nodes()
    fs = [f(x) for x in xs]
    h = grid.h
    pairs = [
        _modified_pair(fs[j - 1], fs[j], fs[j + 1], h)
        for j in range(1, 2 * grid.n_pairs, 2)
    ]
    iv = grid.interval
    correction = (h * h / 15.0) * (f.derivative(1, iv.b) - f.derivative(1, iv.a))
    try:
        estimate: float | None = leading_error_estimate(f, grid)
    except DerivativeUnavailableError:
        estimate = None
    return QuadResult(
        value=pairwise_sum(pairs) - correction,
        rule_id=Rule.MODIFIED_SIMPSON,
        panels=grid.n_pairs,
        leading_error_estimate=estimate,
    )


def leading_error_estimate(f: Integrand, grid: UniformGrid) -> float:
    """Leading-order error of the composite corrected Simpson rule.

    ``h^6/9450 * [f^(5)(b) - f^(5)(a)]``; requires derivative order 5.
    """
    iv = grid.interval
    delta = f.derivative(5, iv.b) - f.derivative(5, iv.a)
    return grid.h**6 / LEADING_ERROR_DENOMINATOR * delta


COMPOSITE_RULES = {
    Rule.SIMPSON: composite_simpson,
    Rule.MODIFIED_SIMPSON: composite_modified_simpson,
}
