import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from cfreach.interval import Interval, interval_mul, interval_pow, scale_interval


def brute_power(a, b, n, pts):
    """min/max of y_1 ... y_n with independent y_i on a grid over [a, b].

    Full enumeration for n <= 3. Beyond that the partial products are cut
    down to their min and max before the next factor: y * P is linear in P,
    so its extremes over any set of P values sit at the set's extremes.
    """
    grid = np.linspace(a, b, pts)
    prod = np.ones(1)
    for k in range(n):
        prod = np.outer(prod, grid).ravel()
        if k >= 2:
            prod = np.array([prod.min(), prod.max()])
    return prod.min(), prod.max()


def test_brute_power_reduction_agrees_with_full_enumeration():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b = np.sort(rng.uniform(-3, 3, size=2))
        grid = np.linspace(a, b, 9)
        full = np.prod(np.array(list(itertools.product(grid, repeat=5))), axis=1)
        assert brute_power(a, b, 5, 9) == pytest.approx((full.min(), full.max()), rel=1e-12, abs=1e-12)


def ulp_close(x, y, ulps=8):
    return abs(x - y) <= ulps * max(math.ulp(x), math.ulp(y))


endpoints = st.floats(-5, 5, allow_nan=False)


@st.composite
def intervals(draw):
    a, b = sorted((draw(endpoints), draw(endpoints)))
    return Interval(a, b)


def test_rejects_reversed_endpoints():
    with pytest.raises(ValueError):
        Interval(1, 0)


def test_mul_examples():
    assert interval_mul(Interval(-2, 1), Interval(1, 3)) == Interval(-6, 3)
    assert interval_mul(Interval(0, 0), Interval(-4, 7)) == Interval(0, 0)
    assert interval_mul(Interval(1, 2), Interval(3, 4)) == Interval(3, 8)


def test_pow_examples():
    assert interval_pow(Interval(-2, 1), 2) == Interval(-2, 4)
    assert interval_pow(Interval(1, 2), 0) == Interval(1, 1)


def test_cube_matches_dense_grid():
    # 201 points per factor; -2 and 1 are grid nodes so the grid extremes are exact
    lo, hi = brute_power(-2.0, 1.0, 3, 201)
    assert (lo, hi) == (-8.0, 4.0)
    assert interval_pow(Interval(-2, 1), 3) == Interval(-8, 4)


def test_relaxed_not_functional_square():
    # the functional square of [-2, 1] would be [0, 4]
    assert interval_pow(Interval(-2, 1), 2).lo == -2


def test_scale_examples():
    assert scale_interval(3, Interval(-2, 1)) == Interval(-6, 3)
    assert scale_interval(-1, Interval(2, 5)) == Interval(-5, -2)
    assert scale_interval(0, Interval(-5, 7)) == Interval(0, 0)


@given(intervals(), st.integers(1, 7))
def test_pow_equals_repeated_mul(iv, n):
    folded = iv
    for _ in range(n - 1):
        folded = interval_mul(folded, iv)
    p = interval_pow(iv, n)
    assert ulp_close(p.lo, folded.lo) and ulp_close(p.hi, folded.hi)


@pytest.mark.parametrize("a, b", list(itertools.product([-3.0, -1.0, 0.0, 2.0], repeat=2)))
@pytest.mark.parametrize("n", range(1, 7))
def test_pow_zero_and_sign_edges(a, b, n):
    if a > b:
        return
    lo, hi = brute_power(a, b, n, 2)  # vertices suffice for products
    p = interval_pow(Interval(a, b), n)
    assert ulp_close(p.lo, lo) and ulp_close(p.hi, hi)


def test_pow_against_grid_oracle_random():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        a, b = np.sort(rng.uniform(-5, 5, size=2))
        n = int(rng.integers(1, 7))
        lo, hi = brute_power(a, b, n, 51)
        tol = n * 5**n * (b - a) / 50
        p = interval_pow(Interval(a, b), n)
        assert abs(p.lo - lo) <= tol and abs(p.hi - hi) <= tol


@given(intervals(), intervals(), st.integers(0, 6))
def test_pow_monotone_under_inclusion(i1, i2, n):
    inner = i1
    outer = Interval(min(i1.lo, i2.lo), max(i1.hi, i2.hi))
    p, q = interval_pow(inner, n), interval_pow(outer, n)
    # subset up to rounding of the endpoint expressions
    slack = 8 * max(math.ulp(q.lo), math.ulp(q.hi), math.ulp(p.lo), math.ulp(p.hi))
    assert q.lo - slack <= p.lo and p.hi <= q.hi + slack


@given(intervals(), intervals(), st.floats(0, 1), st.floats(0, 1))
def test_mul_commutes_and_contains_products(i1, i2, s1, s2):
    assert interval_mul(i1, i2) == interval_mul(i2, i1)
    y1 = i1.lo + s1 * (i1.hi - i1.lo)
    y2 = i2.lo + s2 * (i2.hi - i2.lo)
    assume(i1.lo <= y1 <= i1.hi and i2.lo <= y2 <= i2.hi)
    assert y1 * y2 in interval_mul(i1, i2)


@given(st.floats(-10, 10, allow_nan=False), intervals())
def test_scale_width(lam, iv):
    out = scale_interval(lam, iv)
    assert out.width == pytest.approx(abs(lam) * iv.width, rel=1e-12, abs=1e-12)


def test_operators():
    i = Interval(-2, 1)
    assert i * Interval(1, 3) == Interval(-6, 3)
    assert 3 * i == Interval(-6, 3)
    assert i**2 == Interval(-2, 4)
    assert i + Interval(1, 1) == Interval(-1, 2)
    assert -i == Interval(-1, 2)
    assert 0.5 in i and Interval(-1, 0) in i
