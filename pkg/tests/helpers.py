"""Shared oracles for the test suite.

Everything here is deliberately independent of the library code paths it
checks: exact rational arithmetic for the rule formulas and kernel
integrals, hand-coded symbolic derivatives for the corpus functions,
Richardson-extrapolated finite differences, and a tree differentiator
for the expression AST.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from msquad.expressions import BinOp, Call, Const, Expression, Neg, Num, Var
from msquad.integrand import Integrand

F = Fraction


# -- exact polynomial calculus (coefficients ascending by power) -------------


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = F(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(i * c for i, c in enumerate(coeffs) if i >= 1)


def poly_nth_derivative(coeffs: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    out = tuple(coeffs)
    for _ in range(n):
        out = poly_derivative(out) or (F(0),)
    return out


def poly_integral(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Fraction:
    total = F(0)
    for i, c in enumerate(coeffs):
        total += c * (hi ** (i + 1) - lo ** (i + 1)) / (i + 1)
    return total


def poly_integrand(coeffs: Sequence[float], name: str = "poly") -> Integrand:
    """Integrand backed by direct coefficient calculus (no AD involved)."""
    fcoeffs = tuple(float(c) for c in coeffs)

    def horner(cs: Sequence[float], x: float) -> float:
        acc = 0.0
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    tables = [fcoeffs]
    for _ in range(6):
        prev = tables[-1]
        tables.append(tuple(i * c for i, c in enumerate(prev) if i >= 1) or (0.0,))

    return Integrand(
        lambda x: horner(tables[0], x),
        lambda order, x: horner(tables[order], x),
        max_order=6,
        name=name,
    )


# -- exact rule arithmetic ----------------------------------------------------


def exact_modified_simpson_panel(
    coeffs: Sequence[Fraction], a: Fraction, b: Fraction
) -> Fraction:
    w = b - a
    m = a + w / 2
    d = poly_derivative(tuple(coeffs)) or (F(0),)
    weighted = w / 30 * (
        7 * poly_eval(coeffs, a) + 16 * poly_eval(coeffs, m) + 7 * poly_eval(coeffs, b)
    )
    correction = w * w / 60 * (poly_eval(d, b) - poly_eval(d, a))
    return weighted - correction


def exact_modified_simpson_error(
    coeffs: Sequence[Fraction], a: Fraction, b: Fraction
) -> Fraction:
    """True error (integral minus rule) of the corrected panel rule."""
    return poly_integral(coeffs, a, b) - exact_modified_simpson_panel(coeffs, a, b)


def exact_simpson_composite(
    coeffs: Sequence[Fraction], a: Fraction, b: Fraction, n_pairs: int
) -> Fraction:
    h = (b - a) / (2 * n_pairs)
    total = F(0)
    for j in range(1, 2 * n_pairs, 2):
        total += (
            poly_eval(coeffs, a + (j - 1) * h)
            + 4 * poly_eval(coeffs, a + j * h)
            + poly_eval(coeffs, a + (j + 1) * h)
        )
    return h / 3 * total


# -- corpus with hand-coded symbolic derivatives ------------------------------


@dataclass(frozen=True)
class CorpusFunction:
    name: str
    text: str  # expression accepted by the parser
    derivs: tuple[Callable[[float], float], ...]  # orders 0..6
    mp_fn: Callable  # same function in mpmath arithmetic, for the FD oracle

    def integrand(self) -> Integrand:
        ds = self.derivs

        def provider(order: int, x: float) -> float:
            return ds[order](x)

        return Integrand(ds[0], provider, max_order=6, name=self.name)


def _exp_corpus() -> CorpusFunction:
    import mpmath as mp

    return CorpusFunction("exp", "exp(x)", tuple(math.exp for _ in range(7)), mp.exp)


def _gauss_corpus() -> CorpusFunction:
    # f = exp(-x^2); f^(k)(x) = p_k(x) exp(-x^2) with the polynomials below
    polys = (
        (1.0,),
        (0.0, -2.0),
        (-2.0, 0.0, 4.0),
        (0.0, 12.0, 0.0, -8.0),
        (12.0, 0.0, -48.0, 0.0, 16.0),
        (0.0, -120.0, 0.0, 160.0, 0.0, -32.0),
        (-120.0, 0.0, 720.0, 0.0, -480.0, 0.0, 64.0),
    )

    def make(cs):
        def d(x: float) -> float:
            acc = 0.0
            for c in reversed(cs):
                acc = acc * x + c
            return acc * math.exp(-x * x)

        return d

    import mpmath as mp

    return CorpusFunction(
        "gauss",
        "exp(-x^2)",
        tuple(make(cs) for cs in polys),
        lambda t: mp.exp(-t * t),
    )


def _sin_corpus() -> CorpusFunction:
    cycle = (
        math.sin,
        math.cos,
        lambda x: -math.sin(x),
        lambda x: -math.cos(x),
    )
    import mpmath as mp

    return CorpusFunction(
        "sin", "sin(x)", tuple(cycle[k % 4] for k in range(7)), mp.sin
    )


def _runge_corpus() -> CorpusFunction:
    # f = 1/(1+x^2); f^(k) = q_k(x) / (1+x^2)^(k+1)
    nums = (
        (1.0,),
        (0.0, -2.0),
        (-2.0, 0.0, 6.0),
        (0.0, 24.0, 0.0, -24.0),
        (24.0, 0.0, -240.0, 0.0, 120.0),
        (0.0, -720.0, 0.0, 2400.0, 0.0, -720.0),
        (-720.0, 0.0, 15120.0, 0.0, -25200.0, 0.0, 5040.0),
    )

    def make(k, cs):
        def d(x: float) -> float:
            acc = 0.0
            for c in reversed(cs):
                acc = acc * x + c
            return acc / (1.0 + x * x) ** (k + 1)

        return d

    return CorpusFunction(
        "runge",
        "1/(1+x^2)",
        tuple(make(k, cs) for k, cs in enumerate(nums)),
        lambda t: 1 / (1 + t * t),
    )


CORPUS = (_exp_corpus(), _gauss_corpus(), _sin_corpus(), _runge_corpus())


# -- finite-difference derivative oracle --------------------------------------

_CENTRAL_STENCILS = {
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    4: ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)),
    5: ((-3, -0.5), (-2, 2.0), (-1, -2.5), (1, 2.5), (2, -2.0), (3, 0.5)),
    6: ((-3, 1.0), (-2, -6.0), (-1, 15.0), (0, -20.0), (1, 15.0), (2, -6.0), (3, 1.0)),
}


def richardson_derivative(mp_fn, x: float, k: int, levels: int = 4) -> float:
    """k-th derivative via central differences plus Richardson extrapolation.

    The stencil sums run in extended precision (``mp_fn`` takes and returns
    mpmath numbers) so the subtractive cancellation that cripples sixth
    differences in binary64 does not pollute the oracle.
    """
    import mpmath as mp

    with mp.workdps(40):
        xm = mp.mpf(x)
        h0 = mp.mpf(1) / 32
        stencil = _CENTRAL_STENCILS[k]

        def central(h):
            return sum(mp.mpf(w) * mp_fn(xm + m * h) for m, w in stencil) / h**k

        table = [[central(h0 / 2**j)] for j in range(levels)]
        for col in range(1, levels):
            factor = mp.mpf(4) ** col
            for row in range(col, levels):
                table[row].append(
                    (factor * table[row][col - 1] - table[row - 1][col - 1])
                    / (factor - 1)
                )
        return float(table[levels - 1][levels - 1])


# -- expression-tree symbolic differentiation ---------------------------------


def _mul(a: Expression, b: Expression) -> Expression:
    return BinOp("*", a, b)


def symbolic_diff(node: Expression) -> Expression:
    """First derivative of an expression tree, by structural rules only."""
    if isinstance(node, (Num, Const)):
        return Num(0.0)
    if isinstance(node, Var):
        return Num(1.0)
    if isinstance(node, Neg):
        return Neg(symbolic_diff(node.arg))
    if isinstance(node, BinOp):
        lt, rt = node.left, node.right
        dl, dr = symbolic_diff(lt), symbolic_diff(rt)
        if node.op == "+":
            return BinOp("+", dl, dr)
        if node.op == "-":
            return BinOp("-", dl, dr)
        if node.op == "*":
            return BinOp("+", _mul(dl, rt), _mul(lt, dr))
        if node.op == "/":
            num = BinOp("-", _mul(dl, rt), _mul(lt, dr))
            return BinOp("/", num, BinOp("^", rt, Num(2.0)))
        # power: constant exponents use the monomial rule, otherwise the
        # full logarithmic derivative
        if isinstance(rt, Num):
            scaled = _mul(Num(rt.value), BinOp("^", lt, Num(rt.value - 1.0)))
            return _mul(scaled, dl)
        inner = BinOp(
            "+", _mul(dr, Call("log", lt)), BinOp("/", _mul(rt, dl), lt)
        )
        return _mul(BinOp("^", lt, rt), inner)
    if isinstance(node, Call):
        arg, da = node.arg, symbolic_diff(node.arg)
        if node.fn == "exp":
            return _mul(Call("exp", arg), da)
        if node.fn == "log":
            return BinOp("/", da, arg)
        if node.fn == "sin":
            return _mul(Call("cos", arg), da)
        if node.fn == "cos":
            return Neg(_mul(Call("sin", arg), da))
        if node.fn == "tan":
            return BinOp("/", da, BinOp("^", Call("cos", arg), Num(2.0)))
        if node.fn == "sqrt":
            return BinOp("/", da, _mul(Num(2.0), Call("sqrt", arg)))
    raise TypeError(f"cannot differentiate {node!r}")
