"""Branches of the inverse cardinal sine.

Four evaluators of ``y = sinc_k^{-1}(x)``:

* ``oracle``: bracketed bisection of ``sin(y)/y = x``;
* ``series_anger``: Fourier sine series with incomplete Anger coefficients;
* ``series_weber``: Fourier cosine series with incomplete Weber coefficients;
* ``integral_rep``: Fourier sine integral with an incomplete Anger kernel.

Write ``s = (-1)^k``, ``phi = arccos(s x)``, ``l`` for the half period and
``u(t) = sin t - s x t``. The series coefficients are

    A_n = A_{pi n x / l}(phi, s pi n / l) = (1/pi) int_0^phi cos(n pi u / l) dt

(and the matching B_n), all produced in one pass by the lattice evaluator
in :mod:`arcsinc.special`. Convergence is governed by the gap
``gamma = pi (l - |pi k x|) / l``: roughly ``30 / gamma`` terms are needed,
so the corner ``|k| = 1, x -> 1`` is by far the most expensive region.

Interior points are summed with Wynn's epsilon on the complex partial
sums ``sum (2/n) c_n exp(i n theta)``. At the branch endpoints the rotating
phase collapses to ``(-1)^n`` and the tail becomes algebraic, so
Richardson extrapolation in ``N^(-1/2)`` (``N^(-1/3)`` where the endpoint
angle is pi) is used instead.

Every evaluator works on ``|k|`` and applies ``sign(k)`` at the end, which
makes the odd symmetry in ``k`` exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .accel import richardson, wynn_epsilon
from .branches import branch_domain, locate, parity
from .quadrature import QuadratureConfig
from .special import anger_sine_segments, anger_weber_grid, sinc

_EPS = np.finfo(float).eps


class Method(str, enum.Enum):
    ORACLE = "oracle"
    SERIES_ANGER = "series_anger"
    SERIES_WEBER = "series_weber"
    INTEGRAL = "integral"
    AUTO = "auto"


@dataclass(frozen=True)
class NumericsPolicy:
    """Tolerances and limits for the series and integral evaluators.

    ``max_terms`` caps the number of series terms and ``max_half_periods``
    the number of integral segments of length ``pi / l``; both are rounded
    down to powers of two internally. ``accel_depth`` is the number of
    (strided) partial sums handed to the epsilon algorithm.
    """

    series_tol: float = 1e-10
    max_terms: int = 2 ** 18
    accel_depth: int = 64
    integral_tol: float = 1e-8
    max_half_periods: int = 2 ** 18
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if not (self.series_tol > 0 and self.integral_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_terms < 8 or self.max_half_periods < 8:
            raise ValueError("max_terms and max_half_periods must be >= 8")
        if self.accel_depth < 4:
            raise ValueError("accel_depth must be >= 4")


DEFAULT_POLICY = NumericsPolicy()


@dataclass(frozen=True)
class EvalResult:
    value: float
    err_estimate: float
    work: int
    method: str
    converged: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.err_estimate) and self.err_estimate >= 0):
            raise ValueError("err_estimate must be finite and non-negative")


@dataclass(frozen=True)
class _Setup:
    k: int  # |k|
    x: float
    which: int  # 0 interior, 1 or 2 at a clamped endpoint
    s: int
    phi: float
    l: float
    gamma: float

    @property
    def theta(self) -> float:
        # exactly +-pi at the endpoints, where l = |pi k x|
        if self.which:
            return math.copysign(math.pi, self.x)
        return math.pi ** 2 * self.k * self.x / self.l


def _setup(k: int, x: float) -> tuple[int, _Setup]:
    x, which = locate(k, x)
    sgn = 1 if k > 0 else -1
    k = abs(k)
    s = parity(k)
    phi = math.acos(max(-1.0, min(1.0, s * x)))
    l = math.sqrt(max(0.0, 1.0 - x * x)) - s * x * phi
    slack = max(l - abs(math.pi * k * x), 0.0)
    return sgn, _Setup(k, x, which, s, phi, l, math.pi * slack / l)


def _pow2_floor(n: int) -> int:
    return 1 << (int(n).bit_length() - 1)


def _pow2_ceil(v: float) -> int:
    return 1 << max(0, math.ceil(math.log2(max(v, 1.0))))


def _floor(y: float) -> float:
    return 100 * _EPS * max(1.0, abs(y))


def _endpoint_exponent(st: _Setup) -> float:
    # the t-integrals have a stationary end at t = phi; it is cubic when
    # sin(phi) = 0 (|k| = 1 at x = 1), quadratic otherwise
    return 1.0 / 3.0 if math.sin(st.phi) < 1e-8 else 0.5


# --------------------------------------------------------------------------
# oracle


def oracle(k: int, x: float, tol: float = 1e-15) -> EvalResult:
    """Invert ``sin(y)/y = x`` on branch ``k`` by bisection."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    sgn, st = _setup(k, x)
    d = branch_domain(st.k)
    if st.which:
        return EvalResult(sgn * (d.j1 if st.which == 1 else d.j2), 0.0, 0, Method.ORACLE.value)
    lo, hi = sorted((d.j1, d.j2))
    flo = sinc(lo) - st.x
    steps = 0
    while hi - lo > 2 * math.ulp(hi):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = sinc(mid) - st.x
        steps += 1
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    y = 0.5 * (lo + hi)
    return EvalResult(sgn * y, 0.5 * (hi - lo), steps, Method.ORACLE.value,
                      abs(sinc(y) - st.x) <= max(tol, 4 * _EPS))


# --------------------------------------------------------------------------
# series


_HEAD = 2048


def _coefficients(st: _Setup, n_terms: int, policy: NumericsPolicy):
    nu = math.pi * st.x / st.l
    z = st.s * math.pi / st.l
    g = anger_weber_grid(nu, z, st.phi, 1.0, n_terms, offsets=(1.0,), cfg=policy.quad)
    A, B, eA, eB = g.A[0], g.B[0], g.errA[0], g.errB[0]
    if n_terms > 2 * _HEAD:
        # a transform with many modes loses a few digits on the low modes,
        # which carry the largest weights 2/n; redo those on a small lattice
        h = anger_weber_grid(nu, z, st.phi, 1.0, _HEAD, offsets=(1.0,), cfg=policy.quad)
        A[:_HEAD], B[:_HEAD] = h.A[0], h.B[0]
        eA[:_HEAD], eB[:_HEAD] = h.errA[0], h.errB[0]
    return A, B, eA, eB


def _stride(st: _Setup) -> int:
    # the slowest tail component turns by about gamma per term; sampling the
    # partial sums every 1/(2 gamma) terms gives epsilon a visible rotation
    return max(1, int(0.5 / max(st.gamma, 1e-300)))


def _min_terms(st: _Setup, depth: int) -> int:
    return max(128, _pow2_ceil(4 * depth * _stride(st) / 3))


def _accelerated(S, st: _Setup, depth: int):
    """Strided epsilon estimate of the limit of the partial sums ``S``.

    Two windows of ``depth`` samples are used, ending at the last partial sum
    and three quarters of the way along. Returns ``(estimate, err)``.
    """
    n = S.size
    # under a capped budget fall back to a finer stride rather than a short window
    stride = min(_stride(st), max(1, (n - n // 4) // depth))

    def window(end):
        idx = np.arange(end - 1, -1, -stride)[:depth][::-1]
        return wynn_epsilon(S[idx])

    v, d = window(n)
    v_early, _ = window(n - n // 4)
    # the window comparison tends to trail the true error slightly
    return v, 2.0 * (abs(v - v_early) + d)


def _sum_interior(st: _Setup, kind: str, policy: NumericsPolicy):
    """Adaptive doubling of the number of terms with epsilon acceleration.

    Returns ``(sum, err, n_terms, converged)`` for the oscillatory part of
    the series (Im of the complex sum for the sine series, Re for cosine).
    """
    nmax = _pow2_floor(policy.max_terms)
    n = min(nmax, _min_terms(st, policy.accel_depth))
    pick = (lambda v: v.imag) if kind == "A" else (lambda v: v.real)
    while True:
        A, B, eA, eB = _coefficients(st, n, policy)
        m = np.arange(1, n + 1)
        c, e = (A, eA) if kind == "A" else (B, eB)
        S = np.cumsum((2.0 / m) * c * np.exp(1j * m * st.theta))
        v, acc_err = _accelerated(S, st, policy.accel_depth)
        # quadrature errors of separate coefficients largely cancel, but the
        # rounding of the shared node phases adds a drift of about eps per term
        err = acc_err + float(np.sqrt(np.sum((2.0 / m * e) ** 2))) + n * _EPS
        if err <= policy.series_tol or n >= nmax:
            return pick(v), err, n, err <= policy.series_tol
        n *= 2


def _sum_endpoint(st: _Setup, kind: str, policy: NumericsPolicy):
    """Endpoint sum ``sum (2/n) c_n (-1)^n`` by Richardson extrapolation."""
    p = _endpoint_exponent(st)
    nmax = _pow2_floor(policy.max_terms)
    J = 8
    n = min(nmax, 2 ** 12)
    prev = None
    while True:
        A, B, eA, eB = _coefficients(st, n, policy)
        m = np.arange(1, n + 1)
        c, e = (A, eA) if kind == "A" else (B, eB)
        S = np.cumsum((2.0 / m) * c * np.where(m % 2 == 0, 1.0, -1.0))
        ns = [n >> i for i in range(J, -1, -1) if (n >> i) >= 16]
        est, stage = richardson(ns, [S[i - 1] for i in ns], p)
        err = stage + float(np.sqrt(np.sum((2.0 / m * e) ** 2))) + n * _EPS
        if prev is not None:
            err = max(err, abs(est - prev))
        if err <= policy.series_tol or n >= nmax:
            return est, err, n, err <= policy.series_tol
        prev, n = est, 2 * n


def series_anger(k: int, x: float, policy: NumericsPolicy = DEFAULT_POLICY) -> EvalResult:
    """Sine series with incomplete Anger coefficients.

    ``y = pi k sqrt(1-x^2)/l + s sum_n (2/n) A_n sin(n theta)`` with
    ``theta = pi^2 k x / l``.
    """
    sgn, st = _setup(k, x)
    lead = math.pi * st.k * math.sqrt(max(0.0, 1.0 - st.x * st.x)) / st.l
    if st.which or st.x == 0.0:
        # sin(n theta) vanishes identically: theta is 0 or +-pi
        return EvalResult(sgn * lead, _floor(lead), 1, Method.SERIES_ANGER.value)
    tail, err, n, ok = _sum_interior(st, "A", policy)
    y = lead + st.s * tail
    return EvalResult(sgn * y, err + _floor(y), n, Method.SERIES_ANGER.value, ok)


def series_weber(k: int, x: float, policy: NumericsPolicy = DEFAULT_POLICY) -> EvalResult:
    """Cosine series with incomplete Weber coefficients.

    ``y = pi k + (|x|/l)(1 - phi^2/2) + sign(x) [ (s/l)(sqrt(1-x^2) phi - 1)
    + sum_n (2/n) B_n cos(n theta) ]`` for ``k > 0``; at ``x = 0`` the
    bracket vanishes and ``y = pi k``.
    """
    sgn, st = _setup(k, x)
    if st.x == 0.0:
        y = math.pi * st.k
        return EvalResult(sgn * y, _floor(y), 0, Method.SERIES_WEBER.value)
    if st.which:
        tail, err, n, ok = _sum_endpoint(st, "B", policy)
    else:
        tail, err, n, ok = _sum_interior(st, "B", policy)
    x, l, phi = st.x, st.l, st.phi
    bracket = st.s / l * (math.sqrt(max(0.0, 1.0 - x * x)) * phi - 1.0) + tail
    y = math.pi * st.k + abs(x) / l * (1.0 - 0.5 * phi * phi) + math.copysign(1.0, x) * bracket
    return EvalResult(sgn * y, err + _floor(y), n, Method.SERIES_WEBER.value, ok)


# --------------------------------------------------------------------------
# integral


def _segment_integrals(st: _Setup, nseg: int, policy: NumericsPolicy):
    """Segments of length ``pi / l`` of the integral with ``A(w) = A_{w x}(phi, s w)``."""
    return anger_sine_segments(st.x, float(st.s), st.phi, math.pi * st.k * st.x,
                               math.pi / st.l, nseg, policy.quad)


def _integral_interior(st: _Setup, policy: NumericsPolicy):
    nmax = _pow2_floor(policy.max_half_periods)
    n = min(nmax, _min_terms(st, policy.accel_depth))
    while True:
        seg, qerr = _segment_integrals(st, n, policy)
        v, acc_err = _accelerated(np.cumsum(seg), st, policy.accel_depth)
        err = acc_err + qerr
        if err <= policy.integral_tol or n >= nmax:
            return float(v), err, n, err <= policy.integral_tol
        n *= 2


def _integral_endpoint(st: _Setup, policy: NumericsPolicy, tol: float):
    """Richardson extrapolation of partial integrals at cutoffs ``2 pi j / |a|``.

    At an endpoint ``l = |a|`` so every second segment boundary is a zero of
    ``sin(a w)`` one full period apart; cutoffs at power-of-two segment
    counts remain aligned with that period.
    """
    p = _endpoint_exponent(st)
    nmax = _pow2_floor(policy.max_half_periods)
    J = 6
    n = min(nmax, 2 ** 10)
    prev = None
    while True:
        seg, qerr = _segment_integrals(st, n, policy)
        I = np.cumsum(seg)
        ns = [n >> i for i in range(J, -1, -1) if (n >> i) >= 8]
        est, stage = richardson(ns, [I[i - 1] for i in ns], p)
        err = stage + qerr
        if prev is not None:
            err = max(err, abs(est - prev))
        if err <= tol or n >= nmax:
            return est, err, n, err <= tol
        prev, n = est, 2 * n


def endpoint_anger_integral(k: int, which: int, policy: NumericsPolicy = DEFAULT_POLICY):
    """The sine integral of the Anger kernel at a branch endpoint.

    Returns ``(measured, expected, err, work)`` where ``expected`` is
    ``s (j sign k - pi k) / 2``, the value that makes the integral
    representation exact at ``x_k^(which)``.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    d = branch_domain(k)
    sgn, st = _setup(abs(k), d.x1 if which == 1 else d.x2)
    j = d.j1 if which == 1 else d.j2
    val, err, n, _ = _integral_endpoint(st, policy, policy.integral_tol)
    expected = st.s * (j - math.pi * st.k) / 2
    return sgn * val, sgn * expected, err, n


def integral_rep(k: int, x: float, policy: NumericsPolicy = DEFAULT_POLICY) -> EvalResult:
    """Fourier sine integral ``y = pi k + 2 s int_0^inf A(w) sin(pi k x w) / w dw``."""
    sgn, st = _setup(k, x)
    if st.x == 0.0:
        y = math.pi * st.k
        return EvalResult(sgn * y, _floor(y), 0, Method.INTEGRAL.value)
    if st.which:
        val, err, n, ok = _integral_endpoint(st, policy, policy.integral_tol / 2)
    else:
        val, err, n, ok = _integral_interior(st, policy)
    y = math.pi * st.k + 2 * st.s * val
    return EvalResult(sgn * y, 2 * err + _floor(y), n, Method.INTEGRAL.value, ok)


# --------------------------------------------------------------------------
# front end

_DISPATCH = {
    Method.SERIES_ANGER: series_anger,
    Method.SERIES_WEBER: series_weber,
    Method.INTEGRAL: integral_rep,
}


def evaluate(k: int, x: float, method: Method | str = Method.AUTO,
             policy: NumericsPolicy = DEFAULT_POLICY) -> EvalResult:
    """Evaluate branch ``k`` at ``x`` with the chosen representation.

    ``auto`` returns the exact extremum abscissa at (clamped) endpoints and
    uses the Anger series elsewhere.
    """
    method = Method(method)
    if method is Method.ORACLE:
        return oracle(k, x)
    if method is Method.AUTO:
        sgn, st = _setup(k, x)
        if st.which:
            d = branch_domain(st.k)
            y = d.j1 if st.which == 1 else d.j2
            return EvalResult(sgn * y, _floor(y), 0, Method.AUTO.value)
        return series_anger(k, x, policy)
    return _DISPATCH[method](k, x, policy)
