from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from gl3trace import cones
from gl3trace.cones import (NESTED_PAIRS, signed_tau_hat_sum, moebius_sum, sigma, sigma_direct,
                            tau, tau_hat, tau_hat_prime, truncation_sum)
from gl3trace.roots import G, P0, P12, P21, PARABOLICS, AVector, weyl_group
from gl3trace.weights import embed

coord = st.integers(-20, 20)
point = st.tuples(coord, coord, coord)


@given(point)
def test_sigma_definitions_agree(h):
    for P1, P2 in NESTED_PAIRS:
        assert sigma(P1, P2, h) == sigma_direct(P1, P2, h)


@given(point)
def test_tau_hat_prime_identity(h):
    for P in (P0, P21, P12):
        assert signed_tau_hat_sum(P, h) == tau_hat_prime(P, h)


@given(point, st.integers(1, 9))
def test_indicators_scale_invariant(h, d):
    # a positive common denominator never flips a sign
    H = AVector(*(Fraction(c, d) for c in h))
    for P in PARABOLICS:
        assert tau_hat(P, H) == tau_hat(P, h)
        assert tau_hat_prime(P, H) == tau_hat_prime(P, h)


def test_strict_and_closed_conventions():
    zero = (0, 0, 0)
    assert tau_hat(P0, zero) == 0
    assert tau_hat_prime(P0, zero) == 1
    assert tau(P0, P0, zero) == 1  # empty condition
    assert tau(P0, G, zero) == 0
    assert tau_hat(G, zero) == 1


def test_sigma_diagonal_is_tau_hat_times_complement():
    # sigma_P^P vanishes unless P = G
    for h in [(3, 1, -4), (0, 0, 0), (5, -2, 1)]:
        for P in (P0, P21, P12):
            assert sigma(P, P, h) == 0
        assert sigma(G, G, h) == 1


def test_moebius_table():
    got = {(a.value, b.value): moebius_sum(a, b) for a, b in NESTED_PAIRS}
    assert all(v == (1 if a == b else 0) for (a, b), v in got.items())
    with pytest.raises(ValueError):
        moebius_sum(P21, P12)


def test_nested_pairs_count():
    assert len(NESTED_PAIRS) == 9


def test_wall_grid_size():
    pts = cones.wall_grid(8)
    assert len(pts) >= 1000
    assert all(cones.on_wall(h) for h in pts)


def test_sample_points_reproducible_and_generic():
    a = cones.sample_points(2500, seed=3)
    b = cones.sample_points(2500, seed=3)
    assert a == b and len(a) == 2500
    assert not any(cones.on_wall(h) for h, _ in a)
    assert a != cones.sample_points(2500, seed=4)


def test_verify_reports():
    assert cones.verify_sigma_equivalence(500, 1, wall_radius=3).passed
    rep = cones.verify_tau_hat_prime_identity(P21, 500, 1, wall_radius=None)
    assert rep.passed and rep.checks == 500
    with pytest.raises(ValueError):
        cones.verify_tau_hat_prime_identity(G, 10)
    assert cones.verify_parabolic_moebius().checks == 9


def _hull_oracle(T):
    pts = np.array([embed(s(T)) for s in weyl_group()])
    hull = ConvexHull(pts)
    return hull


@pytest.mark.parametrize("T", [(3, 1, -4), (5, -1, -4), (Fraction(7, 2), Fraction(1, 2), -4)])
def test_truncation_sum_is_hull_indicator(T):
    T = AVector(*T)
    hull = _hull_oracle(T)
    rng = np.random.default_rng(11)
    checked = 0
    for _ in range(600):
        a, b = (Fraction(int(x), 4) for x in rng.integers(-28, 29, 2))
        H = AVector(a, b, -a - b)
        x = embed(H)
        # signed distances to the facets; skip points on the boundary
        d = hull.equations[:, :2] @ x + hull.equations[:, 2]
        if np.min(np.abs(d)) < 1e-9:
            continue
        inside = int(np.all(d < 0))
        assert truncation_sum(H, T) == inside, (H, T)
        checked += 1
    assert checked > 400


@pytest.mark.parametrize("fn,args,want", [
    (tau, (P0, G, (1, 0, -1)), 1),
    (tau, (P0, G, (0, 1, -1)), 0),
    (tau, (P21, P21, (4, -9, 2)), 1),
    (tau_hat, (P21, (1, 1, -2)), 1),
    (tau_hat, (P0, (1, 0, -1)), 1),
    (tau_hat, (P0, (-1, 2, -1)), 0),
    (tau_hat_prime, (P0, (-1, 0, 1)), 1),
    (tau_hat_prime, (P21, (1, 1, -2)), 0),
    (sigma, (P0, P21, (1, 0, -1)), 0),
    (sigma, (P0, P21, (1, -2, 1)), 0),
    (sigma, (P0, P21, (2, -1, -1)), 1),
    (signed_tau_hat_sum, (P0, (-1, 0, 1)), 1),
])
def test_indicator_examples(fn, args, want):
    assert fn(*args) == want


def test_sigma_rejects_non_nested():
    with pytest.raises(ValueError):
        sigma(P21, P12, (1, 2, 3))
