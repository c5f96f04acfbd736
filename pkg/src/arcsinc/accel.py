"""Sequence acceleration for slowly convergent partial sums.

``wynn_epsilon`` handles oscillatory tails (interior points, where the
terms carry a rotating phase); ``richardson`` handles tails with a known
algebraic expansion in ``N**-p`` (endpoint cases and the closed-form
identities, where the convergence is logarithmic and epsilon stalls).
"""

from __future__ import annotations

import math

import numpy as np


def wynn_epsilon(partial_sums, depth: int | None = None):
    """Wynn epsilon extrapolation of a sequence of partial sums.

    Works for real or complex input. Every even column of the epsilon
    table yields an estimate from its last entry; the estimate whose
    difference from the previous even column is smallest is returned,
    with the larger of that difference and the one before it as the
    stage difference.

    Returns ``(estimate, stage_difference)``.
    """
    S = np.asarray(partial_sums)
    if S.ndim != 1 or S.size == 0:
        raise ValueError("need a non-empty 1-d sequence")
    if S.size < 3:
        return S[-1], (abs(S[-1] - S[-2]) if S.size == 2 else math.inf)
    tiny = np.finfo(float).tiny
    prev = np.zeros(S.size, dtype=S.dtype)
    cur = S.copy()
    estimates = [S[-1]]
    col = 0
    max_col = S.size - 1 if depth is None else min(S.size - 1, 2 * depth)
    while col < max_col:
        with np.errstate(invalid="ignore", over="ignore"):
            d = cur[1:] - cur[:-1]
        bad = ~np.isfinite(d) | (np.abs(d) <= tiny)
        if bad.all():
            break
        d = np.where(bad, 1.0, d)
        with np.errstate(invalid="ignore", over="ignore"):
            nxt = prev[1:cur.size] + 1.0 / d
        nxt = np.where(bad, np.inf, nxt)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0:
            last = cur[-1]
            if not np.isfinite(last):
                break
            estimates.append(last)
    best, best_diff = estimates[-1], abs(S[-1] - S[-2])
    if len(estimates) > 1:
        diffs = [abs(estimates[i] - estimates[i - 1]) for i in range(1, len(estimates))]
        i = int(np.argmin(diffs))
        # a single tiny difference can be a coincidence; pair it with its neighbour
        best, best_diff = estimates[i + 1], max(diffs[max(i - 1, 0): i + 1])
    return best, float(best_diff)


def _richardson_fit(ns, values, p):
    ns = np.asarray(ns, dtype=float)
    scale = ns[0]
    cols = [np.ones_like(ns)] + [(ns / scale) ** (-j * p) for j in range(1, ns.size)]
    return float(np.linalg.solve(np.column_stack(cols), np.asarray(values, dtype=float))[0])


def richardson(ns, values, p: float):
    """Extrapolate ``S(N) = S + sum_j b_j N**(-j p)`` to ``N -> infinity``.

    Uses every supplied point for the estimate and the fit without the
    smallest ``N`` for the error estimate. Returns ``(estimate, err)``.
    """
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    if ns.size != values.size or ns.size < 2:
        raise ValueError("need at least two (N, value) pairs of equal length")
    if not p > 0:
        raise ValueError("exponent p must be positive")
    full = _richardson_fit(ns, values, p)
    reduced = _richardson_fit(ns[1:], values[1:], p)
    return full, abs(full - reduced)
