"""Cardinal sine and incomplete Anger/Weber functions.

Scalar evaluators run the adaptive Gauss-Kronrod engine on a panel
partition pre-split by phase. For whole families of arguments that scale
together, ``anger_weber_grid`` evaluates

    A_{w nu}(phi, w x) = (1/pi) int_0^phi cos(w (x sin t - nu t)) dt
    B_{w nu}(phi, w x) = (1/pi) int_0^phi sin(w (nu t - x sin t)) dt

on an equispaced set of ``w`` with one non-uniform FFT per Kronrod offset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import (QuadratureConfig, adaptive_integrate, panel_nodes,
                         phase_breaks, rule_for)

try:
    import finufft
except ImportError:  # pragma: no cover - exercised only without finufft
    finufft = None

_EPS = np.finfo(float).eps
_TAYLOR_CUT = 1e-4  # z^6/5040 < eps/2 below this
NUFFT_EPS = 1e-14
DEFAULT_QUAD = QuadratureConfig()


@dataclass(frozen=True)
class SpecialValue:
    value: float
    err_estimate: float

    def __post_init__(self):
        if not (math.isfinite(self.err_estimate) and self.err_estimate >= 0):
            raise ValueError("err_estimate must be finite and non-negative")


def sinc(z):
    """Unnormalised cardinal sine sin(z)/z with sinc(0) = 1.

    Accepts scalars or arrays; parity is exact because only even functions
    of ``|z|`` are used.
    """
    if np.ndim(z) == 0:
        a = abs(float(z))
        if a < _TAYLOR_CUT:
            z2 = a * a
            return 1.0 - z2 / 6.0 + z2 * z2 / 120.0
        return math.sin(a) / a
    a = np.abs(np.asarray(z, dtype=float))
    out = np.empty_like(a)
    small = a < _TAYLOR_CUT
    z2 = a[small] ** 2
    out[small] = 1.0 - z2 / 6.0 + z2 * z2 / 120.0
    big = ~small
    out[big] = np.sin(a[big]) / a[big]
    return out


def _check_phi(phi):
    if not (0.0 <= phi <= math.pi):
        raise ValueError(f"phi must lie in [0, pi], got {phi!r}")


def _incomplete(kind, nu, phi, x, cfg):
    nu, phi, x = float(nu), float(phi), float(x)
    for v in (nu, phi, x):
        if not math.isfinite(v):
            raise ValueError("arguments must be finite")
    _check_phi(phi)
    if phi == 0.0:
        return SpecialValue(0.0, 0.0)
    if kind == "A":
        f = lambda t: np.cos(x * np.sin(t) - nu * t)
    else:
        f = lambda t: np.sin(nu * t - x * np.sin(t))
    # at most ~2 pi of phase per starting panel
    n0 = max(1, int(math.ceil(phi * (abs(x) + abs(nu)) / (2 * math.pi))))
    n0 = min(n0, cfg.max_subdivisions)
    val, err, _ = adaptive_integrate(f, np.linspace(0.0, phi, n0 + 1), cfg)
    return SpecialValue(val / math.pi, err / math.pi)


def incomplete_anger(nu, phi, x, cfg: QuadratureConfig = DEFAULT_QUAD) -> SpecialValue:
    """A_nu(phi, x) = (1/pi) int_0^phi cos(x sin t - nu t) dt, 0 <= phi <= pi."""
    return _incomplete("A", nu, phi, x, cfg)


def incomplete_weber(nu, phi, x, cfg: QuadratureConfig = DEFAULT_QUAD) -> SpecialValue:
    """B_nu(phi, x) = (1/pi) int_0^phi sin(nu t - x sin t) dt, 0 <= phi <= pi."""
    return _incomplete("B", nu, phi, x, cfg)


def anger(nu, x, cfg: QuadratureConfig = DEFAULT_QUAD) -> SpecialValue:
    """Anger function J_nu(x), the incomplete one taken over [0, pi]."""
    return incomplete_anger(nu, math.pi, x, cfg)


def weber(nu, x, cfg: QuadratureConfig = DEFAULT_QUAD) -> SpecialValue:
    """Weber function E_nu(x), the incomplete one taken over [0, pi]."""
    return incomplete_weber(nu, math.pi, x, cfg)


@dataclass(frozen=True)
class AngerWeberGrid:
    """Values on ``w = (m + offset) * step`` laid out as ``[offset, m]``."""

    A: np.ndarray
    B: np.ndarray
    errA: np.ndarray
    errB: np.ndarray
    n_nodes: int


def _exp_sums(theta, strengths, n_modes):
    """F[j, m] = sum_i strengths[j, i] exp(1j * m * theta_i), m = 0..n_modes-1."""
    half = n_modes // 2
    # recentre modes to -half..n_modes-half-1 for the type-1 transform
    shift = np.exp(1j * half * theta)
    c = np.ascontiguousarray(strengths * shift[None, :])
    if finufft is not None and n_modes > 32:
        wrapped = np.mod(theta + np.pi, 2 * np.pi) - np.pi
        out = finufft.nufft1d1(wrapped, c, n_modes, eps=NUFFT_EPS, isign=1)
        return np.atleast_2d(out)
    m = np.arange(n_modes) - half
    out = np.empty((c.shape[0], n_modes), dtype=complex)
    chunk = max(1, 2_000_000 // max(theta.size, 1))
    for a in range(0, n_modes, chunk):
        E = np.exp(1j * np.outer(m[a:a + chunk], theta))
        out[:, a:a + chunk] = c @ E.T
    return out


def _lattice_sums_type3(psi, wk, wg, step, count, offsets, max_targets=2 ** 22):
    """Same sums as the per-offset type-1 path, via type-3 transforms that
    treat every lattice point as an arbitrary target frequency."""
    strengths = np.array([wk, wg], dtype=complex)
    FK = np.empty((offsets.size, count), dtype=complex)
    FG = np.empty_like(FK)
    per_call = max(1, max_targets // count)
    m = np.arange(count)
    for a in range(0, offsets.size, per_call):
        offs = offsets[a:a + per_call]
        w = ((m[None, :] + offs[:, None]) * step).ravel()
        out = finufft.nufft1d3(psi, strengths, w, eps=NUFFT_EPS, isign=1)
        FK[a:a + offs.size] = out[0].reshape(offs.size, count)
        FG[a:a + offs.size] = out[1].reshape(offs.size, count)
    return FK, FG


def anger_weber_grid(nu, x, phi, step, count, offsets=(0.0,),
                     cfg: QuadratureConfig = DEFAULT_QUAD,
                     phase_budget: float = 3 * math.pi) -> AngerWeberGrid:
    """Incomplete Anger and Weber functions on a scaled-argument lattice.

    Evaluates ``A_{w nu}(phi, w x)`` and ``B_{w nu}(phi, w x)`` for
    ``w = (m + r) * step``, ``m = 0..count-1``, ``r`` in ``offsets``. The
    t-integral uses Kronrod panels sized so that the largest ``w`` sees at
    most ``phase_budget`` radians per panel; the embedded Gauss rule gives
    the error estimates.
    """
    _check_phi(phi)
    offsets = np.atleast_1d(np.asarray(offsets, dtype=float))
    if phi == 0.0 or count == 0:
        z = np.zeros((offsets.size, count))
        return AngerWeberGrid(z, z.copy(), z.copy(), z.copy(), 0)
    rule = rule_for(cfg)
    wmax = (count - 1 + offsets.max()) * abs(step)
    rate = lambda t: wmax * (x * np.cos(t) - nu)
    breaks = phase_breaks(rate, 0.0, phi, phase_budget, min_panels=2)
    t, wk, wg = panel_nodes(breaks, rule)
    psi = x * np.sin(t) - nu * t
    theta = step * psi
    if finufft is not None and offsets.size > 1 and count > 32:
        FK, FG = _lattice_sums_type3(psi, wk, wg, step, count, offsets)
    else:
        rows = []
        for r in offsets:
            ph = np.exp(1j * r * theta)
            rows.append(wk * ph)
            rows.append(wg * ph)
        F = _exp_sums(theta, np.array(rows), count)
        FK, FG = F[0::2], F[1::2]
    FK, FG = FK / math.pi, FG / math.pi
    # cos is even, so A = Re F; sin(nu t - x sin t) = -sin(psi) gives B = -Im F
    A, B = FK.real, -FK.imag
    # transform tolerance plus rounding in the phase w * psi, which grows
    # with the largest lattice point (errors of 1e-11 are typical at 1e6)
    phase_round = _EPS * wmax * float(np.abs(psi).max()) / 8
    floor = (NUFFT_EPS + 50 * _EPS + phase_round) * np.abs(wk).sum() / math.pi
    errA = np.abs(FK.real - FG.real) + floor
    errB = np.abs(FK.imag - FG.imag) + floor
    return AngerWeberGrid(A, B, errA, errB, t.size)


def anger_weber_ladder(nu, x, phi, nmax, cfg: QuadratureConfig = DEFAULT_QUAD):
    """``A_{n nu}(phi, n x)`` and ``B_{n nu}(phi, n x)`` for ``n = 1..nmax``."""
    g = anger_weber_grid(nu, x, phi, 1.0, nmax, offsets=(1.0,), cfg=cfg)
    return AngerWeberGrid(g.A[0], g.B[0], g.errA[0], g.errB[0], g.n_nodes)


def anger_sine_segments(nu, x, phi, a, h, nseg, cfg: QuadratureConfig = DEFAULT_QUAD):
    """Segment integrals of ``A_{w nu}(phi, w x) sin(a w) / w`` over ``[m h, (m+1) h]``.

    Each segment gets the panel Kronrod rule in ``w``, with the lattice
    evaluator supplying the kernel at every rule offset of every segment.
    Returns ``(values, err)`` where ``err`` bounds the summed error of all
    segments (Kronrod/Gauss difference plus the kernel's own error).
    """
    rule = rule_for(cfg)
    offsets = 0.5 * (rule.nodes + 1.0)
    g = anger_weber_grid(nu, x, phi, h, nseg, offsets=offsets, cfg=cfg)
    w = (np.arange(nseg)[None, :] + offsets[:, None]) * h
    kern = np.sin(a * w) / w
    seg = 0.5 * h * (rule.kronrod_weights @ (g.A * kern))
    seg_g = 0.5 * h * (rule.gauss_weights @ (g.A * kern))
    kern_err = 0.5 * h * float(rule.kronrod_weights @ (g.errA * np.abs(kern)).sum(1))
    return seg, float(np.abs(seg - seg_g).sum()) + kern_err
