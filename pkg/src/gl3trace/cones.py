"""Cone indicators on a_0 and the alternating-sum identities they satisfy.

Wall conventions: ``tau`` and ``tau_hat`` use strict inequalities, ``tau_hat_prime``
uses ``<= 0``.  All evaluations are exact; a point H may be an AVector or any
triple of ints/Fractions.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .roots import (
    AVector, G, P0, P12, P21, PARABOLICS, StandardParabolic, delta_relative,
    omega_restricted, parabolic,
)

NESTED_PAIRS = tuple((a, b) for a in PARABOLICS for b in PARABOLICS if a <= b)


def _int_vec(v) -> tuple:
    """Scale a rational vector to an integer one with the same signs of pairings."""
    fr = [Fraction(c) for c in v]
    d = math.lcm(*(c.denominator for c in fr))
    return tuple(int(c * d) for c in fr)


def _point(H) -> tuple:
    if isinstance(H, tuple) and all(type(c) is int for c in H):
        return H
    return _int_vec(H)


def _sgn(u, H) -> int:
    s = u[0] * H[0] + u[1] * H[1] + u[2] * H[2]
    return (s > 0) - (s < 0)


@lru_cache(maxsize=None)
def _roots_rel(P1: StandardParabolic, P2: StandardParabolic) -> tuple:
    return tuple(_int_vec(r.vector) for r in delta_relative(P1, P2))


@lru_cache(maxsize=None)
def _roots(P: StandardParabolic) -> tuple:
    return tuple(_int_vec(r.vector) for r in P.delta)


@lru_cache(maxsize=None)
def _weights(P: StandardParabolic) -> tuple:
    return tuple(_int_vec(w) for w in P.delta_hat)


def _check_nested(P1, P2):
    P1, P2 = parabolic(P1), parabolic(P2)
    if not P1 <= P2:
        raise ValueError(f"{P1.value} is not contained in {P2.value}")
    return P1, P2


def tau(P1, P2, H) -> int:
    """1 iff alpha(H) > 0 for every alpha in Delta_{P1}^{P2}."""
    P1, P2 = _check_nested(P1, P2)
    h = _point(H)
    return int(all(_sgn(r, h) > 0 for r in _roots_rel(P1, P2)))


def tau_hat(P, H) -> int:
    """1 iff varpi(H) > 0 for every varpi in Delta_hat_P."""
    h = _point(H)
    return int(all(_sgn(w, h) > 0 for w in _weights(parabolic(P))))


def tau_hat_prime(P, H) -> int:
    """1 iff varpi(H) <= 0 for every varpi in Delta_hat_P."""
    h = _point(H)
    return int(all(_sgn(w, h) <= 0 for w in _weights(parabolic(P))))


def sigma(P1, P2, H) -> int:
    """sigma_1^2 from its alternating definition over P3 containing P2."""
    P1, P2 = _check_nested(P1, P2)
    h = _point(H)
    total = 0
    for P3 in PARABOLICS:
        if P2 <= P3:
            sign = -1 if (P2.corank - P3.corank) % 2 else 1
            total += sign * tau(P1, P3, h) * tau_hat(P3, h)
    if total not in (0, 1):
        raise ArithmeticError(f"sigma sum left {{0,1}}: {total} at {H}")
    return total


def sigma_direct(P1, P2, H) -> int:
    """sigma_1^2 from the three sign conditions characterizing it."""
    P1, P2 = _check_nested(P1, P2)
    h = _point(H)
    inner = set(_roots_rel(P1, P2))
    for r in _roots_rel(P1, P2):
        if _sgn(r, h) <= 0:
            return 0
    for r in _roots(P1):
        if r not in inner and _sgn(r, h) > 0:
            return 0
    for w in _weights(P2):
        if _sgn(w, h) <= 0:
            return 0
    return 1


def signed_tau_hat_sum(P1, H) -> int:
    """1 + sum over proper P containing P1 of (-1)^dim(A_P/Z) tau_hat_P(H); equals tau_hat_prime."""
    P1 = parabolic(P1)
    h = _point(H)
    total = 1
    for P in PARABOLICS:
        if P1 <= P and P is not G:
            total += (-1) ** P.corank * tau_hat(P, h)
    return total


def moebius_sum(P1, P2) -> int:
    """Sum over P1 <= P <= P2 of (-1)^dim(A_P / A_P2)."""
    P1, P2 = _check_nested(P1, P2)
    return sum((-1) ** (P.corank - P2.corank) for P in PARABOLICS if P1 <= P <= P2)


def truncation_sum(H, T) -> int:
    """Sum over P of (-1)^dim(A/Z) sum over s in Omega(a_0; P) of tau_hat_P(sH - T).

    For T regular in the positive chamber this is the indicator of the convex
    hull of the Weyl orbit of T (the integrand defining the M_0 weight at x=1).
    """
    H = H if isinstance(H, AVector) else AVector(H)
    T = T if isinstance(T, AVector) else AVector(T)
    total = 0
    for P in PARABOLICS:
        for s in _omega0(P):
            total += (-1) ** P.corank * tau_hat(P, s(H) - T)
    return total


@lru_cache(maxsize=None)
def _omega0(P):
    return tuple(omega_restricted(P0, P))


# -- sampling and verification reports ---------------------------------------

_WALLS = tuple(_int_vec(v) for v in (
    (1, -1, 0), (0, 1, -1), (1, 0, -1),
    (Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3)),
    (Fraction(1, 3), Fraction(1, 3), Fraction(-2, 3)),
))


def on_wall(H) -> bool:
    h = _point(H)
    return any(_sgn(w, h) == 0 for w in _WALLS)


def sample_points(n: int, seed: int, bound: int = 50, chunk: int = 1000, generic: bool = True):
    """n rational points k/d with |k_i| <= bound, returned as integer triples of
    numerators (the common positive denominator does not change any sign).

    Chunks draw from independent child seeds so the stream is reproducible for a
    fixed (n, seed, chunk).
    """
    out = []
    children = np.random.SeedSequence(seed).spawn(max(1, -(-n // chunk)))
    for child in children:
        rng = np.random.default_rng(child)
        need = min(chunk, n - len(out))
        got = 0
        while got < need:
            k = rng.integers(-bound, bound + 1, size=3)
            d = int(rng.integers(1, 13))
            h = tuple(int(c) for c in k)
            if generic and on_wall(h):
                continue
            out.append((h, d))
            got += 1
    return out


def wall_grid(radius: int = 6) -> list:
    """Integer points of [-radius, radius]^3 lying on at least one wall."""
    r = range(-radius, radius + 1)
    return [h for h in itertools.product(r, r, r) if on_wall(h)]


@dataclass
class Report:
    identity: str
    samples: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "samples": self.samples,
            "checks": self.checks,
            "passed": self.passed,
            "failures": self.failures[:50],
            "n_failures": len(self.failures),
        }


def _fmt(h, d=1):
    return [str(Fraction(c, d)) for c in h]


def verify_sigma_equivalence(samples: int = 10000, seed: int = 0, wall_radius: int | None = 8) -> Report:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rep = Report("sigma_equivalence")
    pts = [h for h, _ in sample_points(samples, seed)]
    if wall_radius is not None:
        pts += wall_grid(wall_radius)
    rep.samples = len(pts)
    for h in pts:
        for P1, P2 in NESTED_PAIRS:
            rep.checks += 1
            if sigma(P1, P2, h) != sigma_direct(P1, P2, h):
                rep.failures.append({"P1": P1.value, "P2": P2.value, "H": _fmt(h)})
    return rep


def verify_tau_hat_prime_identity(P1=None, samples: int = 10000, seed: int = 0, wall_radius: int | None = 8) -> Report:
    targets = [parabolic(P1)] if P1 is not None else [P0, P21, P12]
    if G in targets:
        raise ValueError("P1 must be a proper parabolic")
    rep = Report("tau_hat_prime_identity")
    pts = [h for h, _ in sample_points(samples, seed)]
    if wall_radius is not None:
        pts += wall_grid(wall_radius)
    rep.samples = len(pts)
    for h in pts:
        for P in targets:
            rep.checks += 1
            if signed_tau_hat_sum(P, h) != tau_hat_prime(P, h):
                rep.failures.append({"P1": P.value, "H": _fmt(h)})
    return rep


def verify_parabolic_moebius(samples=None) -> Report:
    """Exhaustive over the nested standard pairs; ``samples`` is accepted and ignored."""
    rep = Report("moebius")
    for P1, P2 in NESTED_PAIRS:
        rep.checks += 1
        if moebius_sum(P1, P2) != (1 if P1 is P2 else 0):
            rep.failures.append({"P1": P1.value, "P2": P2.value})
    rep.samples = rep.checks
    return rep
