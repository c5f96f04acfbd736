import math
import threading

import pytest

from arcsinc.roots import bessel_3_2_zero, extremum_value, root_table
from arcsinc.special import sinc

from conftest import tan_root


def test_zeroth_root_is_zero():
    assert bessel_3_2_zero(0) == 0.0
    assert extremum_value(0) == 1.0


def test_first_roots_match_bisection_oracle():
    assert bessel_3_2_zero(1) == pytest.approx(4.4934094579090615, abs=1e-13)
    assert bessel_3_2_zero(2) == pytest.approx(7.725251836937708, abs=1e-13)
    for n in (1, 2, 3, 17, 60):
        assert bessel_3_2_zero(n) == pytest.approx(tan_root(n), abs=1e-13 * n)


def test_roots_are_bessel_zeros():
    from scipy.special import spherical_jn
    for n in (1, 2, 5, 40):
        # J_{3/2}(r) vanishes exactly where the spherical j_1(r) does
        assert abs(spherical_jn(1, bessel_3_2_zero(n))) < 1e-14


def test_extremum_value_examples():
    assert extremum_value(1) == pytest.approx(-0.21723362821122166, abs=1e-13)
    r5 = bessel_3_2_zero(5)
    assert abs(sinc(r5) - math.cos(r5)) <= 1e-12


@pytest.mark.parametrize("n", range(1, 101))
def test_root_invariants(n):
    r = bessel_3_2_zero(n)
    assert (n + 0.25) * math.pi < r < (n + 0.5) * math.pi
    assert abs(math.sin(r) - r * math.cos(r)) <= 1e-12 * (1 + r * r)
    # sinc'(r) = (cos r - sinc r) / r vanishes at an extremum
    assert abs((math.cos(r) - sinc(r)) / r) <= 1e-12


def test_table_monotone_and_alternating():
    t = root_table(60)
    assert t[0] == 0.0
    assert all(b > a for a, b in zip(t, t[1:]))
    vals = [extremum_value(n) for n in range(1, 61)]
    assert all((v < 0) == (n % 2 == 1) for n, v in enumerate(vals, start=1))
    mags = [abs(v) for v in vals]
    assert all(b < a for a, b in zip(mags, mags[1:]))


def test_cache_is_idempotent_and_thread_safe():
    results = {}

    def worker(n):
        results[n] = [bessel_3_2_zero(m) for m in range(n, 0, -7)]

    threads = [threading.Thread(target=worker, args=(300 + i,)) for i in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    t = root_table(307)
    assert all(b > a for a, b in zip(t, t[1:]))
    for n, row in results.items():
        assert row == [t[m] for m in range(n, 0, -7)]
    assert bessel_3_2_zero(250) == t[250] == bessel_3_2_zero(250)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        bessel_3_2_zero(-1)
