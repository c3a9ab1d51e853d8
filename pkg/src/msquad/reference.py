"""High-accuracy reference integrals and empirical convergence studies.

The reference oracle is an adaptive bisection scheme built on the
embedded Gauss(7)/Kronrod(15) pair -- deliberately a different algorithm
family from the fixed rules under test, so reference errors are not
correlated with rule errors.  Convergence studies run a composite rule
over a sequence of grids, measure absolute errors against the oracle and
fit the empirical order as the log-log slope.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ReferenceConvergenceError
from .integrand import Integrand, Interval, UniformGrid
from .rules import COMPOSITE_RULES, Rule

# 15-point Kronrod nodes on [-1, 1] (positive half) and their weights,
# with the embedded 7-point Gauss weights on the even-indexed nodes.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_EPS = 2.220446049250313e-16
_MIN_TOL = 1e-14
_DEFAULT_SEGMENT_LIMIT = 2048
ROUNDING_FLOOR = 1e-13  # composite errors below this sit on the fp floor
PREASYMPTOTIC_CEILING = 1e-2


@dataclass(frozen=True)
class ReferenceResult:
    value: float
    est_abs_error: float
    subdivisions: int


def _kronrod_segment(f: Integrand, lo: float, hi: float) -> tuple[float, float]:
    """One G7/K15 application on [lo, hi]: returns (value, error estimate)."""
    scale = 0.5 * (hi - lo)
    centre = lo + scale
    fs: list[float] = []
    for i, x in enumerate(_XGK):
        if i == 7:
            fs.append(f(centre))
        else:
            fs.append(f(centre - scale * x))
            fs.append(f(centre + scale * x))
    # fs layout: pairs (below, above) for i=0..6, then the centre point
    if fs.count(fs[0]) == len(fs):
        # flat samples: the embedded pair is exact, difference estimate is 0
        return fs[0] * (hi - lo), 0.0

    resk = math.fsum(
        [_WGK[i] * (fs[2 * i] + fs[2 * i + 1]) for i in range(7)] + [_WGK[7] * fs[14]]
    )
    resg = math.fsum(
        [_WG[i] * (fs[4 * i + 2] + fs[4 * i + 3]) for i in range(3)] + [_WG[3] * fs[14]]
    )
    value = resk * scale

    reskh = 0.5 * resk
    resabs = math.fsum(
        [_WGK[i] * (abs(fs[2 * i]) + abs(fs[2 * i + 1])) for i in range(7)]
        + [_WGK[7] * abs(fs[14])]
    ) * abs(scale)
    resasc = math.fsum(
        [_WGK[i] * (abs(fs[2 * i] - reskh) + abs(fs[2 * i + 1] - reskh)) for i in range(7)]
        + [_WGK[7] * abs(fs[14] - reskh)]
    ) * abs(scale)

    err = abs(resk - resg) * abs(scale)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > 0.0:
        err = max(err, 50.0 * _EPS * resabs)
    return value, err


def reference_integral(
    f: Integrand,
    iv: Interval,
    tol: float,
    segment_limit: int = _DEFAULT_SEGMENT_LIMIT,
) -> ReferenceResult:
    """Adaptive reference integral with absolute tolerance ``tol``.

    Bisects the segment with the largest embedded error estimate until
    the summed estimate drops to ``tol``.  ``subdivisions`` reports the
    final segment count.  Raises :class:`ReferenceConvergenceError`
    carrying the best value if the segment limit is hit first.
    """
    if tol < _MIN_TOL:
        raise ValueError(f"tolerance must be >= {_MIN_TOL}, got {tol}")

    value, err = _kronrod_segment(f, iv.a, iv.b)
    # heap entries: (-error, insertion counter, lo, hi, value, error)
    heap = [(-err, 0, iv.a, iv.b, value, err)]
    counter = 1
    while True:
        total_err = math.fsum(entry[5] for entry in heap)
        if total_err <= tol:
            break
        if len(heap) >= segment_limit:
            segments = sorted((e[2], e[4]) for e in heap)
            best = math.fsum(v for _, v in segments)
            raise ReferenceConvergenceError(
                f"estimated error {total_err:.3e} still above tolerance {tol:.3e} "
                f"after {len(heap)} segments",
                best_value=best,
                est_abs_error=total_err,
            )
        _, _, lo, hi, _, _ = heapq.heappop(heap)
        mid = lo + 0.5 * (hi - lo)
        for a, b in ((lo, mid), (mid, hi)):
            v, e = _kronrod_segment(f, a, b)
            heapq.heappush(heap, (-e, counter, a, b, v, e))
            counter += 1

    segments = sorted((e[2], e[4], e[5]) for e in heap)
    return ReferenceResult(
        value=math.fsum(v for _, v, _ in segments),
        est_abs_error=math.fsum(e for _, _, e in segments),
        subdivisions=len(segments),
    )


@dataclass(frozen=True)
class ConvergenceRow:
    n_pairs: int
    h: float
    approx: float
    abs_error: float


@dataclass(frozen=True)
class ConvergenceTable:
    """Grid-refinement errors for one rule and the fitted order.

    ``fitted_order`` is the least-squares slope of log(abs_error) against
    log(h), restricted to ``fit_window``: rows whose error is above the
    rounding floor and below the pre-asymptotic ceiling.  It is ``None``
    when fewer than two rows qualify.
    """

    rule_id: Rule
    reference_value: float
    rows: tuple[ConvergenceRow, ...]
    fitted_order: float | None
    fit_window: tuple[int, ...]


def _fit_order(rows: tuple[ConvergenceRow, ...]) -> tuple[float | None, tuple[int, ...]]:
    window = tuple(
        i
        for i, row in enumerate(rows)
        if ROUNDING_FLOOR < row.abs_error <= PREASYMPTOTIC_CEILING
    )
    if len(window) < 2:
        return None, window
    log_h = np.log([rows[i].h for i in window])
    log_e = np.log([rows[i].abs_error for i in window])
    slope = float(np.polyfit(log_h, log_e, 1)[0])
    return slope, window


def convergence_study(
    rule_id: Rule, f: Integrand, iv: Interval, n_list: list[int]
) -> ConvergenceTable:
    """Run a composite rule over grids with the given pair counts.

    ``n_list`` must be strictly increasing, so the spacings are strictly
    decreasing.  Errors are absolute, against the reference oracle at
    tolerance 1e-13.
    """
    if rule_id not in COMPOSITE_RULES:
        raise ValueError(f"no composite form for rule {rule_id!r}")
    if not n_list:
        raise ValueError("n_list must not be empty")
    if any(n2 <= n1 for n1, n2 in zip(n_list, n_list[1:])):
        raise ValueError(f"n_list must be strictly increasing, got {n_list}")

    reference = reference_integral(f, iv, tol=1e-13).value
    apply_rule = COMPOSITE_RULES[rule_id]
    rows = []
    for n in n_list:
        grid = UniformGrid(iv, n)
        approx = apply_rule(f, grid).value
        rows.append(
            ConvergenceRow(
                n_pairs=n, h=grid.h, approx=approx, abs_error=abs(approx - reference)
            )
        )
    fitted, window = _fit_order(tuple(rows))
    return ConvergenceTable(
        rule_id=rule_id,
        reference_value=reference,
        rows=tuple(rows),
        fitted_order=fitted,
        fit_window=window,
    )


@dataclass(frozen=True)
class RuleComparison:
    """Per-grid errors of Simpson vs the corrected rule on identical grids."""

    simpson: ConvergenceTable
    modified: ConvergenceTable
    error_ratios: tuple[float, ...]  # Simpson error / corrected-rule error


def compare_rules(f: Integrand, iv: Interval, n_list: list[int]) -> RuleComparison:
    """Run both composite rules on identical grids and report error ratios."""
    simpson = convergence_study(Rule.SIMPSON, f, iv, n_list)
    modified = convergence_study(Rule.MODIFIED_SIMPSON, f, iv, n_list)
    ratios = []
    for rs, rm in zip(simpson.rows, modified.rows):
        if rm.abs_error == 0.0:
            ratios.append(math.inf if rs.abs_error > 0.0 else math.nan)
        else:
            ratios.append(rs.abs_error / rm.abs_error)
    return RuleComparison(
        simpson=simpson, modified=modified, error_ratios=tuple(ratios)
    )


def convergence_csv(table: ConvergenceTable) -> str:
    """CSV with columns h, approx, abs_error and a fitted-order trailer row."""
    lines = ["h,approx,abs_error"]
    for row in table.rows:
        lines.append(f"{row.h!r},{row.approx!r},{row.abs_error!r}")
    fitted = "" if table.fitted_order is None else repr(table.fitted_order)
    lines.append(f"fitted_order,{fitted}")
    return "\n".join(lines) + "\n"


def comparison_csv(cmp: RuleComparison) -> str:
    """Paired-table CSV: per-h errors for both rules plus their ratio."""
    lines = ["h,simpson,simpson_abs_error,msimpson,msimpson_abs_error,error_ratio"]
    for rs, rm, ratio in zip(cmp.simpson.rows, cmp.modified.rows, cmp.error_ratios):
        lines.append(
            f"{rs.h!r},{rs.approx!r},{rs.abs_error!r},"
            f"{rm.approx!r},{rm.abs_error!r},{ratio!r}"
        )
    for label, table in (("simpson", cmp.simpson), ("msimpson", cmp.modified)):
        fitted = "" if table.fitted_order is None else repr(table.fitted_order)
        lines.append(f"fitted_order_{label},{fitted}")
    return "\n".join(lines) + "\n"
