from fractions import Fraction
from itertools import product

import pytest

from gl3trace.roots import (ALPHA, BETA, G, P0, P12, P21, PARABOLICS, POSITIVE_ROOTS, AVector,
                            WeylElement, delta_relative, dual_weights, gram_constant,
                            gram_determinant, omega_restricted, parabolic, project, rho,
                            root_data, varpi, weyl_group)


def test_dual_basis():
    wa, wb = dual_weights()
    assert wa.dot(ALPHA.vector) == 1 and wa.dot(BETA.vector) == 0
    assert wb.dot(BETA.vector) == 1 and wb.dot(ALPHA.vector) == 0
    assert varpi("alpha") == AVector(Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))


def test_parabolic_order():
    assert P0 <= P21 <= G and P0 <= P12 <= G
    assert not P21 <= P12 and not P12 <= P21
    assert [P.corank for P in PARABOLICS] == [2, 1, 1, 0]
    assert parabolic("gl3") is G and parabolic("p21") is P21


def test_rho():
    assert rho(P0) == AVector(1, 0, -1)
    assert rho(G) == AVector(0, 0, 0)
    # roots alpha+beta and beta sit in N_P21
    assert rho(P21) == AVector(Fraction(1, 2), Fraction(1, 2), -1)
    assert rho(P12) == AVector(1, Fraction(-1, 2), Fraction(-1, 2))


def test_gram():
    assert gram_determinant(P0) == Fraction(1, 3)
    assert gram_determinant(P21) == Fraction(2, 3)
    assert gram_constant(P0) == pytest.approx(3 ** -0.5, abs=1e-15)
    with pytest.raises(ValueError):
        gram_determinant(G)


def test_projection_splits():
    H = AVector(Fraction(5, 2), -1, Fraction(1, 7))
    for P in PARABOLICS:
        inner, outer = project(H, P)
        assert inner + outer == H
        for x in P.levi_simple:
            assert {"alpha": ALPHA, "beta": BETA}[x](outer) == 0


def test_delta_relative():
    assert delta_relative(P0, P0) == ()
    assert [r.name for r in delta_relative(P0, G)] == ["alpha", "beta"]
    assert [r.name for r in delta_relative(P21, G)] == ["beta"]
    with pytest.raises(ValueError):
        delta_relative(P21, P12)


def test_weyl_group_is_s3():
    W = weyl_group()
    assert len(W) == 6 and len({s.perm for s in W}) == 6
    for s, t in product(W, W):
        assert (s * t).perm in {w.perm for w in W}
        assert (s * t).sign == s.sign * t.sign
    H = AVector(3, -1, Fraction(1, 2))
    for s in W:
        assert s.inverse()(s(H)) == H
        assert s(H).dot(s(H)) == H.dot(H)


def test_weyl_permutes_roots():
    vecs = {r.vector for r in POSITIVE_ROOTS} | {-r.vector for r in POSITIVE_ROOTS}
    for s in weyl_group():
        assert {s(v) for v in vecs} == vecs
    with pytest.raises(ValueError):
        WeylElement((0, 0, 1))


@pytest.mark.parametrize("source,target,size", [
    (P0, P0, 6), (P0, P21, 3), (P0, P12, 3), (P0, G, 1),
    (P21, G, 1), (P12, G, 1),
])
def test_omega_sizes(source, target, size):
    assert len(omega_restricted(source, target)) == size


def test_omega_p0_p0_is_whole_group():
    assert {s.perm for s in omega_restricted(P0, P0)} == {s.perm for s in weyl_group()}


def test_root_data_serialisable():
    d = root_data()
    assert set(d["parabolics"]) == {"P0", "P21", "P12", "G"}
    assert d["parabolics"]["P0"]["gram_determinant"] == "1/3"
    assert len(d["weyl_group"]) == 6
