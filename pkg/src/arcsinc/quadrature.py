"""Gauss-Kronrod panel quadrature.

Embedded Gauss/Kronrod pairs are generated on import from the Legendre
three-term structure (no hard-coded tables), so any order with
``2n + 1`` Kronrod nodes is available. The adaptive driver bisects the
panels carrying the largest error until the requested tolerance or the
subdivision budget is reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import legendre as L
from scipy.special import roots_legendre

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and panel rule for the adaptive engine.

    ``panel_rule_order`` is the number of Kronrod nodes per panel and must be
    odd (``2n + 1`` for an ``n``-point embedded Gauss rule).
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 2000
    panel_rule_order: int = 31

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.rel_tol >= 0:
            raise ValueError("rel_tol must be non-negative")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.panel_rule_order < 3 or self.panel_rule_order % 2 == 0:
            raise ValueError("panel_rule_order must be an odd integer >= 3")


@dataclass(frozen=True)
class KronrodRule:
    nodes: np.ndarray  # Kronrod nodes on [-1, 1], ascending
    kronrod_weights: np.ndarray
    gauss_weights: np.ndarray  # zero on the Kronrod-only nodes

    @property
    def size(self) -> int:
        return self.nodes.size


@lru_cache(maxsize=None)
def kronrod_rule(n_gauss: int) -> KronrodRule:
    """Embedded ``n``-point Gauss / ``2n+1``-point Kronrod pair on [-1, 1]."""
    n = n_gauss
    if n < 1:
        raise ValueError("need at least one Gauss node")
    xq, wq = roots_legendre(3 * n + 4)
    eye = np.eye(n + 2)
    P = np.array([L.legval(xq, eye[j]) for j in range(n + 2)])
    # Stieltjes polynomial E = P_{n+1} + sum_{j<=n} e_j P_j, orthogonal to
    # every polynomial of degree <= n against the sign-changing weight P_n.
    T = np.einsum("q,kq,jq->kj", wq * P[n], P[: n + 1], P)
    coef, *_ = np.linalg.lstsq(T[:, : n + 1], -T[:, n + 1], rcond=None)
    stieltjes = np.concatenate([coef, [1.0]])
    extra = np.sort(L.legroots(stieltjes).real)
    gauss_x, gauss_w = roots_legendre(n)
    nodes = np.sort(np.concatenate([gauss_x, extra]))
    V = np.array([L.legval(nodes, np.eye(2 * n + 1)[j]) for j in range(2 * n + 1)])
    rhs = np.zeros(2 * n + 1)
    rhs[0] = 2.0
    kw = np.linalg.solve(V, rhs)
    gw = np.zeros_like(nodes)
    for x, w in zip(gauss_x, gauss_w):
        gw[np.argmin(np.abs(nodes - x))] = w
    return KronrodRule(nodes, kw, gw)


def rule_for(cfg: QuadratureConfig) -> KronrodRule:
    return kronrod_rule((cfg.panel_rule_order - 1) // 2)


def panel_nodes(breaks: np.ndarray, rule: KronrodRule):
    """Map a Kronrod rule onto consecutive panels ``[breaks[i], breaks[i+1]]``.

    Returns flattened nodes plus Kronrod and Gauss weights.
    """
    breaks = np.asarray(breaks, dtype=float)
    half = 0.5 * np.diff(breaks)
    mid = 0.5 * (breaks[:-1] + breaks[1:])
    t = (mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel()
    wk = (half[:, None] * rule.kronrod_weights[None, :]).ravel()
    wg = (half[:, None] * rule.gauss_weights[None, :]).ravel()
    return t, wk, wg


def phase_breaks(phase_rate: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                 budget: float, min_panels: int = 1, grid: int = 4097) -> np.ndarray:
    """Breakpoints on [a, b] so that each panel carries at most ``budget``
    radians of phase, where ``phase_rate`` is the absolute phase derivative.
    """
    if b <= a:
        return np.array([a, b], dtype=float)
    tt = np.linspace(a, b, grid)
    rate = np.abs(phase_rate(tt))
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (rate[1:] + rate[:-1]) * np.diff(tt))])
    total = cum[-1]
    npan = max(min_panels, int(math.ceil(total / budget)) if total > 0 else 1)
    if total > 0:
        # invert the cumulative phase; a uniform floor keeps flat stretches split
        cut = np.interp(np.linspace(0.0, total, npan + 1), cum, tt)
    else:
        cut = np.linspace(a, b, npan + 1)
    cut[0], cut[-1] = a, b
    return np.unique(np.concatenate([cut, np.linspace(a, b, min_panels + 1)]))


def adaptive_integrate(f: Callable[[np.ndarray], np.ndarray], breaks: np.ndarray,
                       cfg: QuadratureConfig):
    """Adaptive Gauss-Kronrod integration of a vectorised ``f``.

    ``breaks`` gives the initial panel partition. Returns
    ``(value, err_estimate, n_panels)``; when the subdivision budget runs out
    the estimate simply stays above tolerance.
    """
    rule = rule_for(cfg)
    lo = np.asarray(breaks[:-1], dtype=float)
    hi = np.asarray(breaks[1:], dtype=float)

    def evaluate(lo, hi):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        t = mid[:, None] + half[:, None] * rule.nodes[None, :]
        fv = f(t)
        k = half * (fv @ rule.kronrod_weights)
        g = half * (fv @ rule.gauss_weights)
        absint = half * (np.abs(fv) @ rule.kronrod_weights)
        err = np.maximum(np.abs(k - g), 50 * _EPS * absint)
        return k, err

    val, err = evaluate(lo, hi)
    while True:
        total = val.sum()
        total_err = err.sum()
        target = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= target or lo.size >= cfg.max_subdivisions:
            break
        # bisect every panel above its length-proportional share of the target
        share = target * (hi - lo) / (hi[-1] - lo[0])
        bad = err > share
        if not bad.any():
            bad[np.argmax(err)] = True
        room = cfg.max_subdivisions - lo.size
        if bad.sum() > room:
            keep = np.argsort(err)[::-1][: max(room, 1)]
            bad = np.zeros_like(bad)
            bad[keep] = True
        mid = 0.5 * (lo[bad] + hi[bad])
        nlo = np.concatenate([lo[~bad], lo[bad], mid])
        nhi = np.concatenate([hi[~bad], mid, hi[bad]])
        nv, ne = evaluate(np.concatenate([lo[bad], mid]), np.concatenate([mid, hi[bad]]))
        val = np.concatenate([val[~bad], nv])
        err = np.concatenate([err[~bad], ne])
        order = np.argsort(nlo)
        lo, hi, val, err = nlo[order], nhi[order], val[order], err[order]
    return float(val.sum()), float(err.sum()), int(lo.size)
