"""Positive zeros of J_{3/2}, i.e. the positive roots of tan y = y.

These locate the extrema of sinc. Roots are found by Newton's method on
g(y) = sin y - y cos y (no poles), safeguarded by the bracket
((n + 1/4) pi, (n + 1/2) pi) and falling back to bisection whenever a step
leaves it. Computed roots go into an append-only, lock-protected table.
"""

from __future__ import annotations

import math
import threading

from .special import sinc

_lock = threading.Lock()
_table = [0.0]  # index n holds j_{3/2,n}; j_{3/2,0} = 0 by convention


def _g(y):
    return math.sin(y) - y * math.cos(y)


def _solve(n: int) -> float:
    lo, hi = (n + 0.25) * math.pi, (n + 0.5) * math.pi
    glo = _g(lo)
    m = (n + 0.5) * math.pi
    y = m - 1.0 / m
    for _ in range(100):
        gy = _g(y)
        if gy == 0.0:
            return y
        if (gy > 0) == (glo > 0):
            lo, glo = y, gy
        else:
            hi = y
        dg = y * math.sin(y)  # g'(y)
        step = gy / dg if dg != 0.0 else math.inf
        ynew = y - step
        if not (lo < ynew < hi):
            ynew = 0.5 * (lo + hi)
        if abs(ynew - y) <= 2 * math.ulp(y):
            return ynew
        y = ynew
    return y


def bessel_3_2_zero(n: int) -> float:
    """n-th positive zero of J_{3/2}; ``n = 0`` gives 0."""
    n = int(n)
    if n < 0:
        raise ValueError("root index must be non-negative")
    table = _table
    if n < len(table):
        return table[n]
    with _lock:
        while len(_table) <= n:
            _table.append(_solve(len(_table)))
        return _table[n]


def root_table(nmax: int) -> tuple[float, ...]:
    """Immutable snapshot of ``j_{3/2,0..nmax}``."""
    bessel_3_2_zero(nmax)
    return tuple(_table[: nmax + 1])


def extremum_value(n: int) -> float:
    """Value of sinc at its n-th positive extremum (1 for n = 0)."""
    return sinc(bessel_3_2_zero(n))
