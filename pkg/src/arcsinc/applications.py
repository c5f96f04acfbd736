"""Peak widths of sinc^2 and two closed-form checks on the special functions.

The half-maximum ordinates of peak ``m`` of ``sinc^2`` lie on neighbouring
branches of the inverse, so the full width at half maximum is a
difference of two branch values:

    m = 0:  2 sinc_1^{-1}(1/sqrt 2)
    m > 0:  sinc_{m+1}^{-1}(h_m) - sinc_m^{-1}(h_m),  h_m = sinc(j_{3/2,m}) / sqrt 2

For large ``m`` the widths approach ``pi/2`` from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .accel import richardson
from .branches import DomainError
from .inverse import DEFAULT_POLICY, Method, NumericsPolicy, evaluate
from .roots import bessel_3_2_zero, extremum_value
from .special import anger_sine_segments, anger_weber_grid

FWHM_LIMIT = math.pi / 2
WEBER_IDENTITY = math.pi / 4 + 1 / math.pi
ANGER_IDENTITY = math.pi / 2


@dataclass(frozen=True)
class FwhmEntry:
    m: int
    width: float
    left: float
    right: float
    err_estimate: float = 0.0

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("peak index must be non-negative")
        if not self.width > 0:
            raise ValueError("width must be positive")


@dataclass(frozen=True)
class IdentityReport:
    name: str
    measured: float
    expected: float
    abs_error: float
    work: int
    err_estimate: float = 0.0

    @classmethod
    def build(cls, name, measured, expected, work, err_estimate=0.0):
        return cls(name, float(measured), float(expected),
                   abs(float(measured) - float(expected)), int(work), float(err_estimate))


def half_max_level(m: int) -> float:
    """Ordinate ``x`` with ``sinc(x)^2`` equal to half the height of peak ``m``."""
    return extremum_value(m) / math.sqrt(2.0)


def fwhm(m: int, policy: NumericsPolicy = DEFAULT_POLICY,
         method: Method | str = Method.ORACLE) -> FwhmEntry:
    """Full width at half maximum of peak ``m`` of ``sinc^2``."""
    m = int(m)
    if m < 0:
        raise ValueError("peak index must be non-negative")
    level = half_max_level(m)
    try:
        if m == 0:
            r = evaluate(1, level, method, policy)
            return FwhmEntry(0, 2 * r.value, -r.value, r.value, 2 * r.err_estimate)
        lo = evaluate(m, level, method, policy)
        hi = evaluate(m + 1, level, method, policy)
    except DomainError as exc:  # membership is guaranteed by the branch geometry
        raise RuntimeError(f"half-maximum level of peak {m} left its branches: {exc}") from exc
    return FwhmEntry(m, hi.value - lo.value, lo.value, hi.value,
                     lo.err_estimate + hi.err_estimate)


def fwhm_large_m(m: int) -> float:
    """Large-``m`` closed form ``pi - 2 arcsin((pi m / sqrt 2) |sinc j_{3/2,m}|)``."""
    if m < 1:
        raise ValueError("the large-m form needs m >= 1")
    return math.pi - 2 * math.asin(math.pi * m / math.sqrt(2.0) * abs(extremum_value(m)))


def fwhm_table(mmax: int, policy: NumericsPolicy = DEFAULT_POLICY,
               method: Method | str = Method.ORACLE) -> list[FwhmEntry]:
    return [fwhm(m, policy, method) for m in range(mmax + 1)]


def _richardson_tail(ns, partial, p, depth):
    ns = [int(n) for n in ns][-(depth + 1):]
    return richardson(ns, [partial[n - 1] for n in ns], p)


def weber_series_identity(policy: NumericsPolicy = DEFAULT_POLICY, n_terms: int | None = None,
                          depth: int = 8) -> IdentityReport:
    """``sum_{n>=1} (-1)^n / n E_{-n}(n)`` against ``pi/4 + 1/pi``.

    The Weber kernel has a cubic stationary point at ``t = pi``, so the terms
    fall off like ``n^(-4/3)``; partial sums at ``N = 2^i`` are extrapolated
    in powers of ``N^(-1/3)``.
    """
    if n_terms is None:
        n_terms = min(2 ** 17, policy.max_terms)
    n_terms = 1 << (int(n_terms).bit_length() - 1)
    if n_terms < 16:
        raise ValueError("need at least 16 terms")
    g = anger_weber_grid(-1.0, 1.0, math.pi, 1.0, n_terms, offsets=(1.0,), cfg=policy.quad)
    E = g.B[0].copy()
    head = min(2048, n_terms)
    # low orders, which dominate the sum, from a small lattice
    E[:head] = anger_weber_grid(-1.0, 1.0, math.pi, 1.0, head, offsets=(1.0,), cfg=policy.quad).B[0]
    n = np.arange(1, n_terms + 1)
    partial = np.cumsum(np.where(n % 2 == 0, 1.0, -1.0) / n * E)
    ns = [1 << i for i in range(4, n_terms.bit_length())]
    est, err = _richardson_tail(ns, partial, 1.0 / 3.0, depth)
    return IdentityReport.build("weber_series", est, WEBER_IDENTITY, n_terms, err)


def anger_integral_identity(policy: NumericsPolicy = DEFAULT_POLICY, half_periods: int | None = None,
                            depth: int = 8) -> IdentityReport:
    """``int_0^inf J_w(-w) sin(pi w) / w dw`` against ``pi/2``.

    Integrated over unit segments (the zeros of ``sin(pi w)``); partial
    integrals at even cutoffs ``2^i`` are extrapolated in ``Omega^(-1/3)``.
    """
    if half_periods is None:
        half_periods = min(2 ** 14, policy.max_half_periods)
    half_periods = 1 << (int(half_periods).bit_length() - 1)
    if half_periods < 16:
        raise ValueError("need at least 16 half periods")
    # J_w(-w) = A_{w * 1}(pi, w * (-1))
    seg, qerr = anger_sine_segments(1.0, -1.0, math.pi, math.pi, 1.0, half_periods, policy.quad)
    partial = np.cumsum(seg)
    ns = [1 << i for i in range(2, half_periods.bit_length())]
    est, err = _richardson_tail(ns, partial, 1.0 / 3.0, depth)
    return IdentityReport.build("anger_integral", est, ANGER_IDENTITY, half_periods, err + qerr)


def anger_decay_constant(omega_min: float = 50.0, omega_max: float = 2000.0,
                         samples: int = 4001, policy: NumericsPolicy = DEFAULT_POLICY) -> float:
    """Measured ``max w^(1/3) |J_w(-w)|`` over ``[omega_min, omega_max]``.

    Empirical constant of the ``w^(-1/3)`` decay of the Anger kernel.
    """
    step = (omega_max - omega_min) / (samples - 1)
    g = anger_weber_grid(1.0, -1.0, math.pi, step, samples, offsets=(omega_min / step,),
                         cfg=policy.quad)
    w = omega_min + step * np.arange(samples)
    return float(np.max(w ** (1 / 3) * np.abs(g.A[0])))


def peak_index_bracket(m: int) -> tuple[float, float]:
    """Abscissas ``(j_{3/2,m}, j_{3/2,m+1})`` between which the right half-maximum point lies."""
    return bessel_3_2_zero(m), bessel_3_2_zero(m + 1)
