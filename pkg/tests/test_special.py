import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arcsinc.quadrature import (QuadratureConfig, adaptive_integrate, kronrod_rule,
                                phase_breaks)
from arcsinc.special import (SpecialValue, anger, anger_sine_segments, anger_weber_grid,
                             incomplete_anger, incomplete_weber, sinc, weber)

from conftest import midpoint_reference

finite = st.floats(-1e6, 1e6, allow_nan=False)


def A_ref(nu, phi, x):
    return midpoint_reference(lambda t: np.cos(x * np.sin(t) - nu * t), 0.0, phi) / math.pi


def B_ref(nu, phi, x):
    return midpoint_reference(lambda t: np.sin(nu * t - x * np.sin(t)), 0.0, phi) / math.pi


# ---------------------------------------------------------------- sinc

def test_sinc_values():
    assert sinc(0.0) == 1.0
    assert abs(sinc(math.pi)) < 1e-16
    assert sinc(math.pi / 2) == pytest.approx(2 / math.pi, abs=1e-15)


def test_sinc_small_argument_matches_series():
    for z in (1e-5, 3e-5, 9.9e-5, 1e-4, 1.1e-4):
        assert sinc(z) == pytest.approx(1 - z * z / 6 + z ** 4 / 120, rel=1e-16, abs=2e-16)


def test_sinc_array_matches_scalar():
    z = np.array([0.0, 1e-6, -2e-5, 0.5, -3.0, 100.0])
    assert np.array_equal(sinc(z), np.array([sinc(v) for v in z]))


@given(finite)
def test_sinc_parity_exact_and_bounded(z):
    assert sinc(-z) == sinc(z)
    assert abs(sinc(z)) <= 1.0


# ---------------------------------------------------------------- quadrature

def test_kronrod_nodes_match_published_values():
    assert kronrod_rule(7).nodes[-1] == pytest.approx(0.9914553711208126, abs=1e-15)
    assert kronrod_rule(10).nodes[-1] == pytest.approx(0.9956571630258081, abs=1e-15)


@pytest.mark.parametrize("n", [3, 7, 10, 15])
def test_kronrod_exact_on_polynomials(n):
    r = kronrod_rule(n)
    for deg in range(0, 3 * n + 2):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert r.kronrod_weights @ r.nodes ** deg == pytest.approx(exact, abs=1e-13)
    for deg in range(0, 2 * n):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert r.gauss_weights @ r.nodes ** deg == pytest.approx(exact, abs=1e-13)


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=-1)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=0)
    with pytest.raises(ValueError):
        QuadratureConfig(panel_rule_order=2)


def test_adaptive_integrate_smooth():
    val, err, _ = adaptive_integrate(np.exp, np.array([0.0, 1.0]), QuadratureConfig())
    assert val == pytest.approx(math.e - 1, abs=1e-14)
    assert err < 1e-12


def test_phase_breaks_cover_interval():
    br = phase_breaks(lambda t: 100 * np.ones_like(t), 0.0, 2.0, math.pi, min_panels=3)
    assert br[0] == 0.0 and br[-1] == 2.0
    assert np.all(np.diff(br) > 0)
    assert len(br) - 1 >= math.ceil(200 / math.pi)


def test_budget_exhaustion_is_reported():
    cfg = QuadratureConfig(max_subdivisions=1, panel_rule_order=3)
    r = incomplete_anger(300.0, math.pi, 250.0, cfg)
    assert r.err_estimate > cfg.abs_tol


def test_special_value_rejects_bad_error():
    with pytest.raises(ValueError):
        SpecialValue(1.0, -1.0)
    with pytest.raises(ValueError):
        SpecialValue(1.0, math.inf)


# ---------------------------------------------------------------- Anger / Weber examples

def test_incomplete_anger_examples():
    assert incomplete_anger(3.7, 0.0, -2.0).value == 0.0
    assert incomplete_anger(0.0, 1.2, 0.0).value == pytest.approx(1.2 / math.pi, abs=1e-15)
    assert incomplete_anger(0.5, 1.0, 2.0).value == pytest.approx(A_ref(0.5, 1.0, 2.0), abs=1e-10)
    # frozen value of the same integral
    assert incomplete_anger(0.5, 1.0, 2.0).value == pytest.approx(0.23411569118568193, abs=1e-14)


def test_incomplete_weber_examples():
    assert incomplete_weber(-1.0, 0.0, 5.0).value == 0.0
    assert incomplete_weber(2.0, 1.5, 0.0).value == pytest.approx(
        (1 - math.cos(3.0)) / (2 * math.pi), abs=1e-15)
    assert incomplete_weber(-3.0, 2.0, 3.0).value == pytest.approx(B_ref(-3.0, 2.0, 3.0), abs=1e-10)


def test_full_anger_and_weber_examples():
    assert anger(0.0, 0.0).value == pytest.approx(1.0, abs=1e-15)
    assert anger(1.0, 0.0).value == pytest.approx(0.0, abs=1e-15)
    assert anger(2.5, -2.5).value == pytest.approx(A_ref(2.5, math.pi, -2.5), abs=1e-10)
    assert weber(0.0, 0.0).value == 0.0
    assert weber(2.0, 0.0).value == pytest.approx(0.0, abs=1e-15)
    assert weber(-4.0, 4.0).value == pytest.approx(B_ref(-4.0, math.pi, 4.0), abs=1e-10)


def test_integer_order_anger_is_bessel():
    from scipy.special import jv
    for n, x in [(0, 1.3), (1, 2.0), (3, 7.5)]:
        assert anger(n, x).value == pytest.approx(jv(n, x), abs=1e-13)


def test_phi_out_of_range_rejected():
    with pytest.raises(ValueError):
        incomplete_anger(1.0, 4.0, 1.0)
    with pytest.raises(ValueError):
        incomplete_weber(1.0, -0.1, 1.0)
    with pytest.raises(ValueError):
        incomplete_anger(math.nan, 1.0, 1.0)


# ---------------------------------------------------------------- properties

# subnormal phi would only exercise underflow in the test arithmetic
phis = st.one_of(st.just(0.0), st.floats(1e-6, math.pi))
triples = st.tuples(st.floats(-10, 10), phis,
                    st.one_of(st.floats(-20, -0.5), st.floats(0.5, 20)))


@settings(max_examples=500, deadline=None)
@given(triples)
def test_anger_recurrence(args):
    nu, phi, x = args
    a = [incomplete_anger(nu + d, phi, x) for d in (1, -1, 0)]
    lhs = a[0].value + a[1].value - 2 * nu / x * a[2].value
    rhs = 2 / (math.pi * x) * math.sin(x * math.sin(phi) - nu * phi)
    bound = 10 * sum(r.err_estimate for r in a)
    assert abs(lhs - rhs) <= bound


@settings(max_examples=500, deadline=None)
@given(triples)
def test_weber_recurrence(args):
    nu, phi, x = args
    b = [incomplete_weber(nu + d, phi, x) for d in (1, -1, 0)]
    lhs = b[0].value + b[1].value - 2 * nu / x * b[2].value
    # cos z - 1 written without cancellation
    rhs = -4 / (math.pi * x) * math.sin(0.5 * (x * math.sin(phi) - nu * phi)) ** 2
    bound = 10 * sum(r.err_estimate for r in b)
    assert abs(lhs - rhs) <= bound


@settings(max_examples=200, deadline=None)
@given(st.floats(-50, 50), st.floats(0, math.pi), st.floats(-50, 50))
def test_boundedness(nu, phi, x):
    assert abs(incomplete_anger(nu, phi, x).value) <= phi / math.pi + 1e-15
    assert abs(incomplete_weber(nu, phi, x).value) <= phi / math.pi + 1e-15


@settings(max_examples=200, deadline=None)
@given(st.floats(-20, 20), st.floats(0, math.pi), st.floats(0, 1), st.floats(-20, 20))
def test_phi_additivity(nu, phi2, frac, x):
    phi1 = frac * phi2
    cfg = QuadratureConfig()
    whole = incomplete_anger(nu, phi2, x, cfg)
    head = incomplete_anger(nu, phi1, x, cfg)
    f = lambda t: np.cos(x * np.sin(t) - nu * t)
    tail, tail_err, _ = (0.0, 0.0, 0) if phi2 == phi1 else adaptive_integrate(
        f, np.linspace(phi1, phi2, 8), cfg)
    tol = whole.err_estimate + head.err_estimate + tail_err / math.pi + 1e-15
    assert abs(whole.value - head.value - tail / math.pi) <= tol


# ---------------------------------------------------------------- lattice evaluator

def test_grid_matches_scalar_evaluator():
    nu, x, phi, step = 0.7, -1.9, 2.3, 0.37
    g = anger_weber_grid(nu, x, phi, step, 200, offsets=(0.25, 1.0))
    for j, r in enumerate((0.25, 1.0)):
        for m in (0, 7, 199):
            w = (m + r) * step
            assert g.A[j, m] == pytest.approx(incomplete_anger(w * nu, phi, w * x).value, abs=1e-12)
            assert g.B[j, m] == pytest.approx(incomplete_weber(w * nu, phi, w * x).value, abs=1e-12)
    assert np.all(g.errA >= 0) and np.all(g.errB >= 0)


def test_sine_segments_sum_to_direct_integral():
    from scipy.integrate import quad
    nu, x, phi, a, h = 1.0, -1.0, math.pi, math.pi, 1.0
    seg, err = anger_sine_segments(nu, x, phi, a, h, 6)
    f = lambda w: incomplete_anger(w * nu, phi, w * x).value * math.sin(a * w) / w
    ref = sum(quad(f, m * h, (m + 1) * h, epsabs=1e-14)[0] for m in range(6))
    assert seg.sum() == pytest.approx(ref, abs=1e-12)
    assert err < 1e-10
