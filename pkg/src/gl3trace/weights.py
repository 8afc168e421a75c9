"""Convex-hull weight functions for GL(3).

The M_0 weight is the area of the convex hull of six points Y_s in the
sum-zero plane.  It is computed two ways: directly (monotone chain hull plus
shoelace) and through the alternating exponential sum over the six Weyl
chambers, whose value at lambda -> 0 is the same area.  The chamber sum is
normalized by the covolume of the root lattice (sqrt 3) so that both routes
return Euclidean area in the sum-zero plane.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
import scipy.linalg

from .roots import (
    ALPHA, BETA, AVector, P0, gram_constant, varpi, weyl_group,
)

# orthonormal basis of the sum-zero plane
U1 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
U2 = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)
ROOT_COVOLUME = math.sqrt(3.0)


def embed(v) -> np.ndarray:
    v = np.asarray([float(c) for c in v])
    return np.array([v @ U1, v @ U2])


@dataclass(frozen=True)
class HullSpec:
    """The vertex family {Y_s}, keyed by Weyl element, in the sum-zero plane."""

    vertices: tuple  # ((WeylElement, coords), ...) in weyl_group() order

    def __post_init__(self):
        for s, y in self.vertices:
            if abs(float(sum(y))) > 1e-9 * (1.0 + max(abs(float(c)) for c in y)):
                raise ValueError(f"vertex for {s} does not have coordinate sum 0: {y}")

    @classmethod
    def from_mapping(cls, mapping) -> "HullSpec":
        return cls(tuple((s, tuple(mapping[s])) for s in weyl_group() if s in mapping))

    @classmethod
    def orbit(cls, T) -> "HullSpec":
        """Y_s = s^-1 T: the Weyl orbit of T (x = 1)."""
        T = T if isinstance(T, AVector) else AVector(T)
        T = T - AVector(1, 1, 1) * (T.total() / 3)
        return cls(tuple((s, tuple(s.inverse()(T))) for s in weyl_group()))

    @classmethod
    def from_group_element(cls, x, T) -> "HullSpec":
        """Y_s = s^-1 (T - H_0(w_s x)) projected to the sum-zero plane."""
        x = np.asarray(x, dtype=float)
        T = np.asarray([float(c) for c in T])
        verts = []
        for s in weyl_group():
            w = np.asarray(s.matrix(), dtype=float)
            y = T - iwasawa_H0(w @ x)
            y = np.asarray(s.inverse().apply_float(y))
            verts.append((s, tuple(y - y.mean())))
        return cls(tuple(verts))

    def points(self) -> np.ndarray:
        return np.array([embed(y) for _, y in self.vertices]).reshape(-1, 2)

    def translated(self, shift) -> "HullSpec":
        shift = np.asarray([float(c) for c in shift])
        shift = shift - shift.mean()
        return HullSpec(tuple((s, tuple(np.asarray(y, float) + shift)) for s, y in self.vertices))

    def scaled(self, c: float) -> "HullSpec":
        return HullSpec(tuple((s, tuple(c * np.asarray(y, float))) for s, y in self.vertices))


def iwasawa_H0(g) -> np.ndarray:
    """H_0(g) = log|diag(r)| for g = r k with r upper triangular, k orthogonal."""
    r, _ = scipy.linalg.rq(np.asarray(g, dtype=float))
    return np.log(np.abs(np.diag(r)))


# -- direct route ---------------------------------------------------------------

def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points) -> list:
    """Andrew's monotone chain; collinear points are dropped."""
    pts = sorted(set(map(tuple, np.asarray(points, float).tolist())))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def shoelace(poly) -> float:
    if len(poly) < 3:
        return 0.0
    x = np.array([p[0] for p in poly])
    y = np.array([p[1] for p in poly])
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def hull_volume_direct(spec: HullSpec) -> float:
    return shoelace(convex_hull_2d(spec.points()))


# -- limit route -----------------------------------------------------------------

class DegenerateDirection(ValueError):
    pass


def _chamber_terms(spec: HullSpec, direction: AVector):
    """(exponent slope, rational denominator) per chamber for lambda = h * direction."""
    terms = []
    for s, y in spec.vertices:
        s_inv = s.inverse()
        d1 = direction.dot(s_inv(ALPHA.vector))
        d2 = direction.dot(s_inv(BETA.vector))
        if d1 == 0 or d2 == 0:
            raise DegenerateDirection(f"direction is orthogonal to a wall of chamber {s.label}")
        slope = sum((float(c) * float(d) for c, d in zip(y, direction)), 0.0)
        terms.append((slope, y, Fraction(1) / (d1 * d2)))
    return terms


def chamber_sum(spec: HullSpec, direction, h, dps: int = 50):
    """sqrt(3) * sum_s exp(<lambda, Y_s>) / prod <lambda, eta>, lambda = h * direction."""
    direction = direction if isinstance(direction, AVector) else AVector(direction)
    terms = _chamber_terms(spec, direction)
    if all(all(float(c) == 0.0 for c in y) for _, y, _ in terms):
        # every exponent vanishes: the sum is rational and cancels exactly
        return sum((q for _, _, q in terms), Fraction(0))
    with mpmath.workdps(dps):
        h = mpmath.mpf(h)
        acc = mpmath.mpf(0)
        for _, y, q in terms:
            expo = h * mpmath.fsum(mpmath.mpf(float(c)) * mpmath.mpf(d.numerator) / d.denominator
                                   for c, d in zip(y, direction))
            acc += mpmath.exp(expo) * mpmath.mpf(q.numerator) / q.denominator
        return acc * mpmath.sqrt(3) / h ** 2


def richardson(hs, values, dps: int = 50):
    """Neville extrapolation of values(h) to h = 0."""
    with mpmath.workdps(dps):
        hs = [mpmath.mpf(h) for h in hs]
        table = [mpmath.mpf(v) for v in values]
        n = len(table)
        for k in range(1, n):
            for i in range(n - 1, k - 1, -1):
                table[i] = (hs[i - k] * table[i] - hs[i] * table[i - 1]) / (hs[i - k] - hs[i])
        return table[-1]


DEFAULT_DIRECTION = AVector(Fraction(7, 5), Fraction(-3, 10), Fraction(-11, 10))


def hull_volume_limit(spec: HullSpec, direction=None, h=None, dps: int = 50) -> float:
    """Limit of the chamber sum along lambda = h_k * direction, extrapolated to h = 0.

    ``direction`` must pair non-trivially with every root; it is projected to the
    sum-zero plane.  ``h`` is a decreasing positive sequence; by default it is
    scaled to the spread of the vertices.
    """
    direction = DEFAULT_DIRECTION if direction is None else (
        direction if isinstance(direction, AVector) else AVector(direction))
    direction = direction - AVector(1, 1, 1) * (direction.total() / 3)
    if h is None:
        spread = max([abs(float(sum(float(c) * float(d) for c, d in zip(y, direction))))
                      for _, y in spec.vertices] + [1.0])
        h = [0.25 / spread / 2 ** k for k in range(6)]
    h = list(h)
    if any(b >= a for a, b in zip(h, h[1:])) or min(h) <= 0:
        raise ValueError("h must be a strictly decreasing positive sequence")
    values = [chamber_sum(spec, direction, hk, dps) for hk in h]
    if all(isinstance(v, Fraction) for v in values):
        return float(values[-1])
    return float(richardson(h, values, dps))


# -- M_21 interval and M_0 norm weight -------------------------------------------

def interval_m21(Hm, Hn_flip, T):
    """Endpoints [-w_a(T) - w_b(Hm) + w_a(Hn_flip), w_b(T) - w_b(Hm)]."""
    wa, wb = varpi("alpha"), varpi("beta")
    Hm, Hn_flip, T = (v if isinstance(v, AVector) else AVector(v) for v in (Hm, Hn_flip, T))
    lo = -wa.dot(T) - wb.dot(Hm) + wa.dot(Hn_flip)
    hi = wb.dot(T) - wb.dot(Hm)
    return lo, hi


def interval_weight_m21(Hm, Hn_flip, T):
    lo, hi = interval_m21(Hm, Hn_flip, T)
    return max(hi - lo, Fraction(0))


@dataclass(frozen=True)
class NormWeightInput:
    n1: float
    n2: float
    n3: float

    def norms(self):
        n1, n2, n3 = self.n1, self.n2, self.n3
        A = math.sqrt(1.0 + n3 * n3 + (n1 * n3 - n2) ** 2)
        B = math.sqrt(1.0 + n1 * n1 + n2 * n2)
        C = math.sqrt(1.0 + n1 * n1)
        D = math.sqrt(1.0 + n3 * n3)
        return A, B, C, D


def c_m0_weight(n, a_P0: float | None = None) -> float:
    """(a_P0 / 2) [2 ln A ln B - ln(A/D)^2 - ln(B/C)^2] for the unipotent n(n1, n2, n3)."""
    if not isinstance(n, NormWeightInput):
        n = NormWeightInput(*map(float, n))
    a = gram_constant(P0) if a_P0 is None else a_P0
    A, B, C, D = n.norms()
    la, lb = math.log(A), math.log(B)
    return 0.5 * a * (2.0 * la * lb - math.log(A / D) ** 2 - math.log(B / C) ** 2)
