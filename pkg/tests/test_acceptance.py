"""Acceptance criteria, one test each; run with ``pytest tests/test_acceptance.py -s``."""
import csv
import io
import math
import time

import numpy as np

from cfreach.chenfliess import SampledInput, iterated_integral
from cfreach.cli import run
from cfreach.interval import Interval, interval_pow
from cfreach.mmreach import integrate_embedding
from cfreach.oracle import simulate
from cfreach.polylie import generate_coefficients
from cfreach.reachia import InputBox, bound_coefficients, reach_envelope
from cfreach.systems import fixture
from cfreach.words import EMPTY, FormalPowerSeries, Word

from test_interval import brute_power
from test_reachia import sign_case_bound


def report(number, title, ok, detail):
    print(f"\ncriterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    assert ok, f"criterion {number} failed: {detail}"


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    rows = list(csv.reader(io.StringIO(out.getvalue())))
    return code, rows[0] if rows else [], rows[1:]


def test_1_ferfera_lower_envelope():
    start = time.perf_counter()
    code, _, rows = cli("reach", "--fixture", "ferfera", "--order", "20", "--t-final", "1")
    elapsed = time.perf_counter() - start
    err = abs(float(rows[-1][1]) - math.e)
    report(1, "order-20 lower bound at t=1 vs e", code == 0 and err < 1e-9 and elapsed < 1,
           f"error {err:.2e} (tol 1e-9), {elapsed:.3f} s")


def test_2_ferfera_upper_envelope():
    start = time.perf_counter()
    code, _, rows = cli("reach", "--fixture", "ferfera", "--order", "40", "--t-final", "1")
    elapsed = time.perf_counter() - start
    err = abs(float(rows[-1][2]) - math.exp(2.8))
    report(2, "order-40 upper bound at t=1 vs e^2.8", code == 0 and err < 1e-6 and elapsed < 1,
           f"error {err:.2e} (tol 1e-6), {elapsed:.3f} s")


def test_3_envelope_matches_embedding():
    spec = fixture("ferfera")
    s = spec.system
    t = np.linspace(0, 1, 1001)
    traj = integrate_embedding(s, s.z0, s.z0, [spec.box.a], [spec.box.b], t)
    lo, hi = traj.output_box(s)
    t11, lo, hi = t[::100], lo[0, ::100], hi[0, ::100]
    env40 = reach_envelope(generate_coefficients(s, 0, 40), spec.box, t11)
    mm_err = max(np.max(np.abs(env40.lower[0] - lo)), np.max(np.abs(env40.upper[0] - hi)))

    env3 = reach_envelope(generate_coefficients(s, 0, 3), spec.box, t11)
    partial = lambda x: sum(x**k / math.factorial(k) for k in range(4))
    n3_err = max(np.max(np.abs(env3.lower[0] - partial(t11))),
                 np.max(np.abs(env3.upper[0] - partial(2.8 * t11))))
    report(3, "MM corners vs order-40 envelope; N=3 vs partial sums",
           mm_err < 1e-5 and n3_err < 1e-2, f"MM gap {mm_err:.2e} (tol 1e-5), N=3 gap {n3_err:.2e} (tol 1e-2)")


def test_4_containment():
    start = time.perf_counter()
    details, ok = [], True
    for name in ("ferfera", "lotka-volterra"):
        code, _, rows = cli("check", "--fixture", name, "--order", "3", "--samples", "200", "--seed", "7")
        ok &= code == 0
        details.append(f"{name} exit {code} " + " ".join(f"{r[0]}={r[3]}" for r in rows))
    code, _, rows = cli("check", "--fixture", "lotka-volterra", "--order", "3", "--samples", "200",
                        "--seed", "7", "--t-final", "0.3", "--tail")
    ok &= code == 0 and any(r[0] == "cfia_tail" and r[3] == "ok" for r in rows)
    details.append(f"lotka-volterra --tail [0,0.3] exit {code} " + " ".join(f"{r[0]}={r[3]}" for r in rows))
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30
    report(4, "Monte-Carlo containment via check", ok, "; ".join(details) + f"; {elapsed:.1f} s")


def test_5_interval_power_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst = 0.0
    ok = True
    for _ in range(100):
        a, b = np.sort(rng.uniform(-5, 5, size=2))
        n = int(rng.integers(1, 7))
        lo, hi = brute_power(a, b, n, 51)
        tol = n * 5**n * (b - a) / 50
        p = interval_pow(Interval(a, b), n)
        gap = max(abs(p.lo - lo), abs(p.hi - hi))
        ok &= gap <= tol
        worst = max(worst, gap / tol if tol else 0.0)
    elapsed = time.perf_counter() - start
    report(5, "interval power vs grid brute force", ok and elapsed < 5,
           f"100 intervals, worst gap/tol {worst:.3f}, {elapsed:.3f} s")


def test_6_sign_case_equivalence():
    rng = np.random.default_rng(5)
    checked = mismatches = 0
    while checked < 500:
        a, b = np.sort(rng.uniform(-4, 4, size=2)) * rng.choice([1, 1, 1, 3])
        c = float(rng.uniform(-5, 5))
        if a == 0 or b == 0 or abs(a) == abs(b) or c == 0:
            continue
        n = int(rng.integers(1, 9))
        w = Word([1] * n + [0] * int(rng.integers(0, 3)))
        lo, hi = bound_coefficients(FormalPowerSeries(1, len(w), {w: c}), InputBox(1, a, b))
        mismatches += lo[w] != sign_case_bound(c, n, a, b) or hi[w] != -sign_case_bound(-c, n, a, b)
        checked += 1
    report(6, "bound coefficients vs explicit sign cases", mismatches == 0,
           f"{checked} tuples, {mismatches} mismatches (exact equality)")


def test_7_coefficients():
    c = generate_coefficients(fixture("ferfera").system, 0, 10)
    ones = all(c[Word([1] * k)] == 1 for k in range(11)) and len(c.support()) == 11
    lv = generate_coefficients(fixture("lotka-volterra").system, 0, 1)
    got = (lv[EMPTY], lv[Word([0])], lv[Word([1])])
    lv_ok = got == (1 / 6, -1 / 36, 1 / 6)
    report(7, "ferfera all-ones to N=10; Lotka-Volterra low-order coefficients", ones and lv_ok,
           f"ferfera support {len(c.support())} words all ones={ones}; LV {got}")


def test_8_order_checks():
    s = fixture("ferfera").system
    errs = []
    for K in (50, 100):
        t = np.linspace(0, 1, K + 1)
        errs.append(abs(simulate(s, SampledInput(t, [np.full(K + 1, 2.8)]))[0, -1] - math.exp(2.8)))
    rk4 = errs[0] / errs[1]

    w = Word([1, 0, 1])
    exact = 1.3 * 1.3 / 6
    q = [abs(iterated_integral(w, SampledInput.constant([1.3], 1.0, K))[-1] - exact) for K in (100, 200)]
    trap = q[0] / q[1]
    report(8, "RK4 and trapezoid convergence under step halving", rk4 >= 12 and trap >= 3.5,
           f"RK4 ratio {rk4:.2f} (min 12), trapezoid ratio {trap:.2f} (min 3.5)")
