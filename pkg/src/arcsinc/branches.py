"""Branch bookkeeping for the inverse cardinal sine.

Branch ``k`` (nonzero) is the monotone piece of sinc between the extrema at
``j2 * sign(k)`` and ``j1 * sign(k)``, with

    j1 = j_{3/2, 2 ceil(|k|/2) - 1},   j2 = j_{3/2, 2 floor(|k|/2)},
    x1 = sinc(j1) < 0 < x2 = sinc(j2),
    T1 = arccos((-1)^k x1),            T2 = arccos((-1)^k x2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .roots import bessel_3_2_zero
from .special import sinc

CLAMP_TOL = 1e-12


class DomainError(ValueError):
    """Argument outside the domain of the requested branch."""


def _check_k(k) -> int:
    if int(k) != k or k == 0:
        raise ValueError(f"branch index must be a nonzero integer, got {k!r}")
    return int(k)


def parity(k: int) -> int:
    """(-1)^k"""
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class BranchDomain:
    k: int
    j1: float
    j2: float
    x1: float
    x2: float
    T1: float
    T2: float

    @property
    def sign(self) -> int:
        return 1 if self.k > 0 else -1

    def endpoint_value(self, which: int) -> float:
        """Branch value at ``x1`` (which=1) or ``x2`` (which=2)."""
        return self.sign * (self.j1 if which == 1 else self.j2)

    def contains(self, x: float, tol: float = CLAMP_TOL) -> bool:
        return self.x1 - tol <= x <= self.x2 + tol


@lru_cache(maxsize=256)
def branch_domain(k: int) -> BranchDomain:
    k = _check_k(k)
    a = abs(k)
    j1 = bessel_3_2_zero(2 * math.ceil(a / 2) - 1)
    j2 = bessel_3_2_zero(2 * (a // 2))
    x1, x2 = sinc(j1), sinc(j2)
    s = parity(k)
    T1 = math.acos(max(-1.0, min(1.0, s * x1)))
    T2 = math.acos(max(-1.0, min(1.0, s * x2)))
    return BranchDomain(k, j1, j2, x1, x2, T1, T2)


def locate(k: int, x: float, tol: float = CLAMP_TOL) -> tuple[float, int]:
    """Clamp ``x`` into the domain of branch ``k``.

    Returns ``(x, which)`` where ``which`` is 1 or 2 if ``x`` was within
    ``tol`` of that endpoint (and has been snapped to it), else 0.
    """
    d = branch_domain(k)
    x = float(x)
    if not math.isfinite(x) or not d.contains(x, tol):
        raise DomainError(
            f"x={x!r} is outside the domain [{d.x1!r}, {d.x2!r}] of branch k={d.k}")
    if abs(x - d.x1) <= tol:
        return d.x1, 1
    if abs(x - d.x2) <= tol:
        return d.x2, 2
    return x, 0


def half_period_l(k: int, x: float) -> float:
    """sqrt(1 - x^2) - (-1)^k x arccos((-1)^k x) on the branch domain."""
    x, _ = locate(k, x)
    s = parity(k)
    return math.sqrt(max(0.0, 1.0 - x * x)) - s * x * math.acos(s * x)


def lemma1_slack(k: int, x: float) -> float:
    """l(x) - |pi k x|: zero at both endpoints, 1 at x = 0, positive between."""
    x, _ = locate(k, x)
    return half_period_l(k, x) - abs(math.pi * k * x)
