"""Acceptance gate: one test per criterion, tolerances pinned, one line each.

Every criterion is property-based or a frozen closed form; exact paths must
come out at delta == 0, float paths at their stated relative tolerances.
Runtime caps are asserted where stated.
"""

import math
import time
from fractions import Fraction

from valgeo.geometry import standard_simplex, volume
from valgeo.harness import FuzzConfig, run_suite
from valgeo.harness.suites import (
    covariance_suite, dissection_suite, euler_relation_suite, eu4_suite,
    fubini_suite, homogeneity_suite, local_euler_suite, mc_moment_suite,
    valuation_suite, closed_forms_suite, cone_volume_suite,
)

FLOAT_TOL = 1e-8


def _report(number: int, name: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    line = f"ACCEPTANCE {number:2d} [{status}] {name}"
    if detail:
        line += f" ({detail})"
    print(line)


def test_criterion_1_valuation_property_suite():
    t0 = time.monotonic()
    res3 = valuation_suite(FuzzConfig(seed=101, trials=200, n_range=(3, 3),
                                      tolerance_float=FLOAT_TOL))
    res4 = valuation_suite(FuzzConfig(seed=102, trials=50, n_range=(4, 4),
                                      tolerance_float=FLOAT_TOL))
    elapsed = time.monotonic() - t0
    passed = res3.passed and res4.passed and elapsed <= 120
    _report(1, "valuation property, 200 x n=3 + 50 x n=4, 7 operators",
            passed, f"{elapsed:.1f}s, checks={len(res3.rows) + len(res4.rows)}")
    assert res3.passed, res3.violations()[:3]
    assert res4.passed, res4.violations()[:3]
    assert elapsed <= 120


def test_criterion_2_euler_relation():
    res = euler_relation_suite(FuzzConfig(seed=103, trials=100))
    _report(2, "Euler-type collapse of the full face sum, zero tolerance",
            res.passed, f"checks={len(res.rows)}")
    assert res.passed, res.violations()[:3]


def test_criterion_3_local_euler():
    res = local_euler_suite(FuzzConfig(seed=104, trials=100))
    _report(3, "local Euler-Schlaefli-Poincare on probes + hand fixture",
            res.passed, f"checks={len(res.rows)}")
    assert res.passed, res.violations()[:3]


def test_criterion_4_fubini():
    res = fubini_suite(FuzzConfig(seed=105, trials=50))
    _report(4, "Fubini: exact polynomial; exp 1e-8; |t|^p, log 1e-6",
            res.passed, f"checks={len(res.rows)}")
    assert res.passed, res.violations()[:3]


def test_criterion_5_closed_forms():
    res = closed_forms_suite(FuzzConfig(seed=106, trials=20))
    simplex_ok = all(volume(standard_simplex(d)) == Fraction(1, math.factorial(d))
                     for d in range(2, 7))
    passed = res.passed and simplex_ok
    _report(5, "closed forms: 1/n!, cube Laplace product 1e-12, 1/12",
            passed, f"checks={len(res.rows)}")
    assert passed, res.violations()[:3]


def test_criterion_6_covariance():
    sl = covariance_suite(FuzzConfig(seed=107, trials=100), "SL")
    gl = covariance_suite(FuzzConfig(seed=108, trials=100), "GLplus")
    passed = sl.passed and gl.passed
    _report(6, "SL(n) exact covariance + GL+ weight-0 incl det 8",
            passed, f"checks={len(sl.rows) + len(gl.rows)}")
    assert sl.passed, sl.violations()[:3]
    assert gl.passed, gl.violations()[:3]


def test_criterion_7_homogeneity():
    res = homogeneity_suite(FuzzConfig(seed=109, trials=25))
    _report(7, "degree laws in the body and log law in the direction, 1e-9",
            res.passed, f"checks={len(res.rows)}")
    assert res.passed, res.violations()[:3]


def test_criterion_8_dissection():
    res = dissection_suite(FuzzConfig(seed=110, trials=1))
    _report(8, "simplex dissection identity, d in {2,3}, exact",
            res.passed, f"checks={len(res.rows)}")
    assert res.passed, res.violations()[:3]


def test_criterion_9_eu4():
    res = eu4_suite(FuzzConfig(seed=111, trials=100))
    _report(9, "cone-hull Euler drop identity, 100 random bodies, exact",
            res.passed, f"checks={len(res.rows)}")
    assert res.passed, res.violations()[:3]


def test_criterion_10_monte_carlo_concordance():
    t0 = time.monotonic()
    res = mc_moment_suite(FuzzConfig(seed=112, trials=100), samples=10 ** 6,
                          required_fraction=0.99)
    elapsed = time.monotonic() - t0
    passed = res.passed and elapsed <= 300
    _report(10, "Monte-Carlo 4-sigma concordance >= 99/100 at 1e6 samples",
            passed, f"{elapsed:.1f}s, hits={res.summary['hits']}/100")
    assert res.passed, res.summary
    assert elapsed <= 300
