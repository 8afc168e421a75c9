import math

import numpy as np
import pytest
from scipy import integrate

from gl3trace import quadrature as Q

LN2 = math.log(2.0)
SPEC = Q.QuadratureSpec(abs_tol=1e-7, rel_tol=1e-9)
F = Q.TestFunction.scalar(1.0, 1.0)


def _half_line(g):
    # integral over R of g(|v|) e^{-v^2/2}, log singularity at 0
    a, _ = integrate.quad(lambda v: g(v) * math.exp(-v * v / 2), 0, 1, limit=200)
    b, _ = integrate.quad(lambda v: g(v) * math.exp(-v * v / 2), 1, np.inf, limit=200)
    return 2 * (a + b)


I0 = math.sqrt(2 * math.pi)
I1 = _half_line(math.log)
I2 = _half_line(lambda v: math.log(v) ** 2)


def test_separable_moments_sanity():
    assert I0 == pytest.approx(_half_line(lambda v: 1.0), rel=1e-12)
    assert I1 == pytest.approx(-I0 * (np.euler_gamma + LN2) / 2, rel=1e-10)


def test_jm0_against_separable_oracle():
    want = 0.5 * (2 * I2 * I0) + 2 * I1 * I1 + 3 * LN2 * (2 * I1 * I0)
    r = Q.j_m0(F, SPEC)
    assert r.value == pytest.approx(want, abs=1e-7)
    assert r.error_estimate < 1e-6


def test_jm21_against_radial_oracle():
    want, _ = integrate.quad(lambda r: 0.5 * math.log(4 * r * r) * math.exp(-r * r / 2) * 2 * math.pi * r,
                             0, np.inf, limit=200)
    assert Q.j_m21(F, SPEC).value == pytest.approx(want, abs=1e-7)


def test_jm0_T_against_separable_oracle():
    spec = Q.QuadratureSpec(abs_tol=1e-6, rel_tol=1e-6)
    T1, T2 = 0.5, -0.25
    # v13 carries no weight and contributes a plain factor I0
    poly = -1.5 * T1 ** 2 - 1.5 * T2 ** 2 + 6 * T1 * T2
    want = I0 * (0.5 * (2 * I2 * I0 + 4 * I1 * I1)
                 + 3 * T2 * (LN2 * I0 * I0 + I1 * I0) + 3 * T1 * (LN2 * I0 * I0 + I1 * I0)
                 + 3 * (LN2 * I0 * I0 + 2 * I1 * I0) + poly * I0 * I0)
    assert Q.j_m0_T(1.0, F, spec, Q.WeightParams(T1, T2)).value == pytest.approx(want, abs=1e-6)


def test_jm0_T_is_quadratic_in_T():
    spec = Q.QuadratureSpec(abs_tol=1e-6, rel_tol=1e-6)
    base = Q.j_m0_T(1.0, F, spec).value
    vol = Q.plain_integral(1.0, F, "n0_log", spec).value
    assert vol == pytest.approx((2 * math.pi) ** 1.5, abs=1e-7)
    lin = Q.j_m0_T(1.0, F, spec, Q.WeightParams(1.0, 0.0)).value - base
    quad = Q.j_m0_T(1.0, F, spec, Q.WeightParams(2.0, 0.0)).value - base
    # second difference isolates -3/2 T1^2 times the volume
    assert quad - 2 * lin == pytest.approx(-3.0 * vol, abs=1e-6)


def test_jm21_T_shift():
    spec = SPEC
    a = Q.j_m21_T(1.0, F, spec).value
    b = Q.j_m21_T(1.0, F, spec, Q.WeightParams(0.75, 0.5)).value
    assert a == pytest.approx(Q.j_m21(F, spec).value, abs=1e-9)
    assert b - a == pytest.approx(1.25 * 2 * math.pi, abs=1e-8)


def test_jm21_T_with_u_against_oracle():
    spec = Q.QuadratureSpec(abs_tol=1e-6, rel_tol=1e-6)
    want = 2.0 * (2 * I1 * I0 * I0 + 2 * LN2 * I0 ** 3)
    r = Q.j_m21_T(1.0, F, spec, with_u=1, c_S=2.0)
    assert r.value == pytest.approx(want, abs=1e-6)


@pytest.mark.parametrize("sub,want", [("Min", 2 * math.pi), ("Reg", (2 * math.pi) ** 1.5)])
def test_unipotent_closed_forms(sub, want):
    assert Q.j_g_unipotent(1.0, sub, F, SPEC).value == pytest.approx(want, abs=1e-9)


def test_central_scaling():
    # f centred at zI evaluated on z n(0, a, b): the Gaussian width shrinks by z
    f = Q.TestFunction.scalar(2.0, 1.0)
    assert Q.j_g_unipotent(2.0, "Min", f, SPEC).value == pytest.approx(2 * math.pi / 4, abs=1e-9)
    assert Q.j_g_unipotent(1.0, "Reg", F, SPEC, c_S=3.0).value == pytest.approx(9 * (2 * math.pi) ** 1.5, abs=1e-8)


def test_constant_term_shift():
    a = Q.j_m0(F, SPEC).value
    b = Q.j_m0(F, SPEC, Q.WeightParams(constant=1.5)).value
    assert b - a == pytest.approx(1.5 * 2 * math.pi, abs=1e-9)
    assert Q.WeightParams().constant_mode == "DropO1"


def test_zero_function():
    z = Q.ZeroFunction()
    assert Q.j_m0(z, SPEC).value == 0.0
    assert Q.j_m21(z, SPEC).value == 0.0
    assert Q.j_m21_T(1.0, z, SPEC).value == 0.0
    assert Q.j_g_unipotent(1.0, "Min", z, SPEC).value == 0.0


def test_k_average_of_invariant_function_is_itself():
    X = np.eye(3) + np.triu(np.random.default_rng(1).standard_normal((3, 3)), 1)
    assert Q.k_average(F)(X) == pytest.approx(F(X), rel=1e-12)


def test_so3_rule_is_orthogonal():
    R, w = Q.so3_rule(4)
    assert np.sum(w) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(np.einsum("nij,nkj->nik", R, R), np.eye(3), atol=1e-12)


def test_positive_integrand_positive_result():
    for sub in ("Min", "Reg"):
        assert Q.j_g_unipotent(1.0, sub, Q.TestFunction.scalar(1.0, 0.4), SPEC).value > 0


def test_tolerance_error_carries_estimate():
    spec = Q.QuadratureSpec(abs_tol=1e-30, rel_tol=1e-30, max_points=20000)
    with pytest.raises(Q.QuadratureToleranceError) as e:
        Q.j_m21(F, spec)
    assert math.isfinite(e.value.value) and e.value.error_estimate >= 0


def test_spec_validation_and_echo():
    with pytest.raises(ValueError):
        Q.QuadratureSpec(abs_tol=0)
    with pytest.raises(ValueError):
        Q.TestFunction(sigma=-1)
    with pytest.raises(ValueError):
        Q.j_g_unipotent(1.0, "Tri", F)
    r = Q.j_m21(F, SPEC)
    assert r.to_dict()["spec_echo"]["quadrature"]["abs_tol"] == 1e-7
