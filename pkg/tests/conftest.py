import math

import numpy as np
import pytest
from scipy.optimize import brentq


def midpoint_reference(f, a, b, n=1_000_000):
    """Composite midpoint rule on n uniform cells: an independent quadrature oracle."""
    h = (b - a) / n
    t = a + h * (np.arange(n) + 0.5)
    return float(np.sum(f(t)) * h)


def tan_root(n):
    """n-th positive root of tan y = y via brentq on sin y - y cos y."""
    if n == 0:
        return 0.0
    g = lambda y: math.sin(y) - y * math.cos(y)
    return brentq(g, (n + 0.25) * math.pi, (n + 0.5) * math.pi, xtol=1e-15, rtol=1e-15)


def bisect_inverse(k, x):
    """Root of sin(y)/y = x between the extrema bounding branch k (scipy brentq)."""
    a = abs(k)
    j1 = tan_root(2 * math.ceil(a / 2) - 1)
    j2 = tan_root(2 * (a // 2))
    lo, hi = sorted((j1, j2))
    f = lambda y: (math.sin(y) / y if y else 1.0) - x
    return math.copysign(brentq(f, lo, hi, xtol=1e-15, rtol=1e-15), k)


@pytest.fixture
def brute():
    return midpoint_reference
