import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arcsinc.accel import richardson, wynn_epsilon


def test_wynn_alternating_harmonic():
    n = np.arange(1, 41)
    est, err = wynn_epsilon(np.cumsum((-1.0) ** (n + 1) / n))
    assert est == pytest.approx(math.log(2), abs=1e-13)
    assert err < 1e-10


def test_wynn_complex_rotating_series():
    import mpmath
    n = np.arange(1, 201)
    est, _ = wynn_epsilon(np.cumsum(np.exp(2j * n) / n ** 1.3))
    ref = complex(mpmath.polylog(1.3, mpmath.exp(2j)))
    assert abs(est - ref) < 1e-12


def test_wynn_handles_stationary_sequence():
    est, err = wynn_epsilon(np.full(10, 3.0))
    assert est == 3.0 and math.isfinite(err)


@settings(max_examples=50, deadline=None)
@given(st.floats(-0.9, 0.9).filter(lambda q: abs(q) > 0.05), st.floats(-5, 5))
def test_wynn_exact_on_geometric(q, s):
    seq = s + q ** np.arange(1, 12)
    est, _ = wynn_epsilon(seq)
    assert est == pytest.approx(s, abs=1e-9)


def test_richardson_zeta():
    from scipy.special import zeta
    ns = np.array([2 ** i for i in range(4, 12)])
    vals = [np.sum(1.0 / np.arange(1, m + 1) ** 1.5) for m in ns]
    est, err = richardson(ns, vals, 0.5)
    assert est == pytest.approx(zeta(1.5), abs=1e-9)
    assert err < 1e-7


def test_richardson_validation():
    with pytest.raises(ValueError):
        richardson([1], [1.0], 0.5)
    with pytest.raises(ValueError):
        richardson([1, 2], [1.0, 2.0], 0.0)
