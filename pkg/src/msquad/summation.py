"""Deterministic compensated summation.

Composite rules accumulate per-panel contributions with a fixed-order
pairwise (tree) reduction.  Each merge uses an error-free two-sum and the
rounding errors are carried along and folded back in at the end, so the
result is deterministic (independent of any caller-side parallelism) and
the error grows like O(log n) instead of O(n).
"""

from __future__ import annotations

from typing import Iterable


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Return ``(s, e)`` with ``s = fl(a + b)`` and ``a + b = s + e`` exactly."""
    s = a + b
    bp = s - a
    e = (a - (s - bp)) + (b - bp)
    return s, e


def pairwise_sum(values: Iterable[float]) -> float:
    """Sum ``values`` with compensated pairwise reduction, low index first.

    The reduction tree is fixed by the input order, so identical inputs
    always produce bitwise-identical output.
    """
    nodes = [(float(v), 0.0) for v in values]
    if not nodes:
        return 0.0
    while len(nodes) > 1:
        merged = []
        for i in range(0, len(nodes) - 1, 2):
            (s1, e1), (s2, e2) = nodes[i], nodes[i + 1]
            s, e = two_sum(s1, s2)
            merged.append((s, e + e1 + e2))
        if len(nodes) % 2:
            merged.append(nodes[-1])
        nodes = merged
    s, e = nodes[0]
    return s + e
