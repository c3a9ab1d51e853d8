"""Piecewise-polynomial error kernels of the corrected Simpson rule.

For k = 2..6 the rule's error on the unit interval is exactly
``integral_0^1 T_k(x) f^(k)(x) dx``, where ``T_k`` is a piecewise
polynomial of degree k that switches branch at x = 1/2.  This module
stores the branch polynomials with exact rational coefficients (expanded
from their factored forms at import time), evaluates them in Horner form
on binary64, and exposes the sharp norm constants the error bounds are
built from:

- ``C_k`` -- L1 norm of ``T_k`` on [0, 1]
- ``B_k`` -- sup norm of ``T_k`` on [0, 1] (tabulated for k <= 5 only)
- ``D_k = 2^(k+1) C_k`` and ``E_k = 2^(k+1) B_k`` -- the same constants
  rescaled to a width-2h panel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .integrand import Interval

KERNEL_ORDERS = (2, 3, 4, 5, 6)

_F = Fraction

# -- exact polynomial helpers (coefficients ascending by power) --------------


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = [_F(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def _poly_scale(c: Fraction, p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(c * a for a in p)


def _product(scale: Fraction, *factors: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out: tuple[Fraction, ...] = (_F(1),)
    for f in factors:
        out = _poly_mul(out, f)
    return _poly_scale(scale, out)


def _x_minus(c: Fraction) -> tuple[Fraction, ...]:
    return (-c, _F(1))


_X = (_F(0), _F(1))

# Branch polynomials: T_k = (-1)^k P_k on [0, 1/2), (-1)^k Q_k on [1/2, 1].
_P_POLYS: dict[int, tuple[Fraction, ...]] = {
    2: (_F(1, 60), _F(-7, 30), _F(1, 2)),
    3: _product(_F(1, 6), _X, _x_minus(_F(1, 5)), _x_minus(_F(1, 2))),
    4: _product(_F(1, 24), _X, _X, _x_minus(_F(1, 3)), _x_minus(_F(3, 5))),
    5: _product(_F(1, 120), _X, _X, _X, _x_minus(_F(1, 2)), _x_minus(_F(2, 3))),
    6: _product(_F(1, 720), _X, _X, _X, _X, (_F(1, 2), _F(-7, 5), _F(1))),
}

_Q_POLYS: dict[int, tuple[Fraction, ...]] = {
    2: (_F(17, 60), _F(-23, 30), _F(1, 2)),
    # The 4/5 root is forced by the mirror symmetry Q_3(x) = -P_3(1 - x)
    # and by the zero-mean identity; both oracle tests pin it down.
    3: _product(_F(1, 6), _x_minus(_F(1)), _x_minus(_F(1, 2)), _x_minus(_F(4, 5))),
    4: _product(_F(1, 24), _x_minus(_F(1)), _x_minus(_F(1)), _x_minus(_F(2, 3)), _x_minus(_F(2, 5))),
    5: _product(
        _F(1, 120),
        _x_minus(_F(1)), _x_minus(_F(1)), _x_minus(_F(1)),
        _x_minus(_F(1, 2)), _x_minus(_F(1, 3)),
    ),
    6: _product(
        _F(1, 720),
        _x_minus(_F(1)), _x_minus(_F(1)), _x_minus(_F(1)), _x_minus(_F(1)),
        (_F(1, 10), _F(-3, 5), _F(1)),
    ),
}


@dataclass(frozen=True)
class PeanoKernel:
    """One error kernel: exact branch coefficients plus its sign factor."""

    k: int
    left_poly: tuple[Fraction, ...]
    right_poly: tuple[Fraction, ...]
    sign: int


_KERNELS: dict[int, PeanoKernel] = {
    k: PeanoKernel(k, _P_POLYS[k], _Q_POLYS[k], (-1) ** k) for k in KERNEL_ORDERS
}

# Signed float coefficients for runtime Horner evaluation.
_LEFT_F: dict[int, tuple[float, ...]] = {
    k: tuple(float(c) * (-1) ** k for c in _P_POLYS[k]) for k in KERNEL_ORDERS
}
_RIGHT_F: dict[int, tuple[float, ...]] = {
    k: tuple(float(c) * (-1) ** k for c in _Q_POLYS[k]) for k in KERNEL_ORDERS
}

# Closed-form norm constants, evaluated to binary64 exactly once.
_SQRT19 = math.sqrt(19.0)
_C: dict[int, float] = {
    2: 19.0 * _SQRT19 / 10125.0,
    3: 253.0 / 360000.0,
    4: 1.0 / 14580.0,
    5: 1.0 / 115200.0,
    6: 1.0 / 604800.0,
}
_B: dict[int, float] = {
    2: 1.0 / 40.0,
    3: 7.0 / 20250.0 + 19.0 * _SQRT19 / 81000.0,
    4: 1.0 / 5760.0,
    5: 1.0 / 58320.0,
}


@dataclass(frozen=True)
class KernelConstants:
    """Norm constants of one kernel and their width-2h panel rescalings."""

    k: int
    c: float
    d: float
    b: float | None
    e: float | None


def _check_order(k: int) -> None:
    if k not in _KERNELS:
        raise ValueError(f"kernel order must be one of {KERNEL_ORDERS}, got {k!r}")


def kernel(k: int) -> PeanoKernel:
    """The exact kernel record for order ``k``."""
    _check_order(k)
    return _KERNELS[k]


def _horner(coeffs: tuple[float, ...], x: float) -> float:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def kernel_eval(k: int, x: float) -> float:
    """Evaluate ``T_k`` at ``x`` in [0, 1].

    The value at exactly 1/2 comes from the right branch (the branches
    agree there for every k).
    """
    _check_order(k)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"kernel argument must lie in [0, 1], got {x!r}")
    coeffs = _LEFT_F[k] if x < 0.5 else _RIGHT_F[k]
    return _horner(coeffs, x)


def kernel_eval_scaled(k: int, t: float, iv: Interval) -> float:
    """Evaluate the kernel rescaled to ``iv``: ``(b-a)^k * T_k((t-a)/(b-a))``.

    The normalization makes ``integral_a^b T~_k f^(k)`` reproduce the
    corrected-rule error on ``[a, b]`` exactly.
    """
    _check_order(k)
    if not iv.a <= t <= iv.b:
        raise ValueError(f"argument {t!r} outside interval [{iv.a}, {iv.b}]")
    u = (t - iv.a) / iv.width
    u = min(max(u, 0.0), 1.0)
    return iv.width**k * kernel_eval(k, u)


def kernel_abs_integral(k: int) -> float:
    """Closed-form L1 norm ``C_k`` of ``T_k`` on [0, 1]."""
    _check_order(k)
    return _C[k]


def kernel_max_abs(k: int) -> float:
    """Closed-form sup norm ``B_k``; tabulated for k = 2..5 only."""
    _check_order(k)
    if k not in _B:
        raise ValueError(f"no closed-form sup norm is tabulated for k = {k}")
    return _B[k]


def kernel_moment(k: int, j: int) -> float:
    """``integral_0^1 T_k(x) x^j dx`` by exact piecewise integration.

    Zero for j = 0, k = 2..5 and for all monomial degrees j <= 5 - k
    when k = 2, 3, 4; for k = 6 the moment of order 0 is +C_6 (the
    kernel does not change sign).
    """
    _check_order(k)
    if not isinstance(j, int) or isinstance(j, bool) or not 0 <= j <= 6:
        raise ValueError(f"moment degree must be an integer in 0..6, got {j!r}")
    ker = _KERNELS[k]
    half, one = _F(1, 2), _F(1)
    total = _F(0)
    for poly, lo, hi in ((ker.left_poly, _F(0), half), (ker.right_poly, half, one)):
        for i, c in enumerate(poly):
            p = i + j + 1
            total += c * (hi**p - lo**p) / p
    return float(ker.sign * total)


def scaled_constants(k: int) -> KernelConstants:
    """``(C_k, B_k, D_k, E_k)`` with ``D_k = 2^(k+1) C_k``, ``E_k = 2^(k+1) B_k``.

    The factor is a power of two, so the scaled values are exact
    multiples of the stored closed forms.
    """
    _check_order(k)
    scale = float(2 ** (k + 1))
    c = _C[k]
    b = _B.get(k)
    return KernelConstants(
        k=k,
        c=c,
        d=scale * c,
        b=b,
        e=None if b is None else scale * b,
    )
