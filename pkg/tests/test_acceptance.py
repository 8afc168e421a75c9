"""Acceptance criteria, one test each, held to the stated tolerances.

Run with pytest, or directly as a script for a plain pass/fail listing.
"""
import json
import subprocess
import sys

from gl3trace import suite

CFG = suite.SuiteConfig()


def _check(n, record_criterion):
    res = suite.CRITERIA[n - 1](CFG)
    record_criterion(n, res.name, res.passed)
    print(res.line())
    assert res.passed, json.dumps(res.to_dict(timing=True), default=str, indent=1)
    return res


def test_criterion_1_sigma_equivalence(record_criterion):
    res = _check(1, record_criterion)
    assert res.measured["failures"] == 0


def test_criterion_2_tau_hat_prime_identity(record_criterion):
    _check(2, record_criterion)


def test_criterion_3_parabolic_moebius(record_criterion):
    _check(3, record_criterion)


def test_criterion_4_hull_weight_cross_oracle(record_criterion):
    _check(4, record_criterion)


def test_criterion_5_orbit_classifier(record_criterion):
    _check(5, record_criterion)


def test_criterion_6_local_integral(record_criterion):
    _check(6, record_criterion)


def test_criterion_7_zeta_engine(record_criterion):
    _check(7, record_criterion)


def test_criterion_8_coefficient_assembly(record_criterion):
    _check(8, record_criterion)


def test_criterion_9_weighted_orbital_integrals(record_criterion):
    _check(9, record_criterion)


def _suite_bytes():
    out = subprocess.run([sys.executable, "-m", "gl3trace", "suite", "--seed", "0"],
                         capture_output=True, timeout=600)
    return out.returncode, out.stdout


def test_criterion_10_determinism(record_criterion):
    c1, b1 = _suite_bytes()
    c2, b2 = _suite_bytes()
    ok = b1 == b2 and len(b1) > 0
    record_criterion(10, "determinism: suite output byte-identical across runs", ok)
    assert c1 == c2 == 0
    assert ok


if __name__ == "__main__":
    bad = 0
    for res in suite.run_suite(CFG):
        print(res.line())
        bad += not res.passed
    same = _suite_bytes()[1] == _suite_bytes()[1]
    print(f"[{'PASS' if same else 'FAIL'}] criterion 10: determinism: suite output byte-identical across runs")
    sys.exit(1 if bad or not same else 0)
