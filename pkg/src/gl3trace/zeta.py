"""Partial zeta values, Laurent data at s = 1, the local log-norm integral and the
unipotent coefficients built from them.

zeta(s0 + e) is evaluated by Euler-Maclaurin summation carried out on truncated
power series in e, so one pass gives the value together with its first few
s-derivatives.  At s0 = 1 the pole N^(1-s)/(s-1) is split off exactly, which
yields the Stieltjes constants from the same engine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np


class PoleError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeSet:
    """S = {infinity} together with finitely many primes."""

    S_fin: tuple = ()
    includes_infinity: bool = True

    def __post_init__(self):
        ps = tuple(int(p) for p in self.S_fin)
        if len(set(ps)) != len(ps):
            raise ValueError(f"duplicate primes in {ps}")
        bad = [p for p in ps if not _is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        if not self.includes_infinity:
            raise ValueError("S must contain the archimedean place")
        object.__setattr__(self, "S_fin", tuple(sorted(ps)))

    @classmethod
    def parse(cls, text) -> "PrimeSet":
        if text is None:
            return cls()
        if isinstance(text, PrimeSet):
            return text
        if isinstance(text, str):
            parts = [t.strip() for t in text.split(",") if t.strip() and t.strip() not in ("inf", "oo")]
            return cls(tuple(int(t) for t in parts))
        return cls(tuple(text))

    def with_prime(self, p: int) -> "PrimeSet":
        return PrimeSet(self.S_fin + (p,))

    def label(self) -> str:
        return "{" + ",".join(["inf"] + [str(p) for p in self.S_fin]) + "}"


def _dps(precision: float) -> int:
    return max(30, int(-math.log10(precision)) + 20)


# -- truncated power series in e ---------------------------------------------

class Series:
    """c[0] + c[1] e + ... + c[K-1] e^(K-1), coefficients are mpmath numbers."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = list(c)

    @classmethod
    def const(cls, a, K):
        return cls([a] + [0] * (K - 1))

    @classmethod
    def linear(cls, a, b, K):
        return cls(([a, b] + [0] * K)[:K])

    def __add__(self, o):
        if isinstance(o, Series):
            return Series([x + y for x, y in zip(self.c, o.c)])
        return Series([self.c[0] + o] + self.c[1:])

    __radd__ = __add__

    def __mul__(self, o):
        if not isinstance(o, Series):
            return Series([x * o for x in self.c])
        K = len(self.c)
        out = [0] * K
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j in range(K - i):
                out[i + j] += x * o.c[j]
        return Series(out)

    __rmul__ = __mul__

    def reciprocal(self):
        K = len(self.c)
        a0 = self.c[0]
        out = [1 / a0] + [0] * (K - 1)
        for n in range(1, K):
            out[n] = -sum(self.c[k] * out[n - k] for k in range(1, n + 1)) / a0
        return Series(out)


def _exp_linear(a, b, K):
    """exp(a + b e) as a series."""
    ea = mpmath.exp(a)
    return Series([ea * b ** k / mpmath.factorial(k) for k in range(K)])


@lru_cache(maxsize=256)
def _zeta_series(s0, K: int, dps: int, tol: float):
    """Taylor coefficients of zeta(s0 + e) (or of zeta(1 + e) - 1/e when s0 == 1)."""
    with mpmath.workdps(dps):
        s0m = mpmath.mpmathify(s0)
        at_pole = s0m == 1
        N = max(20, int(abs(s0m)) + 20)
        acc = Series([0] * K)
        for n in range(1, N):
            acc = acc + _exp_linear(-s0m * mpmath.log(n), -mpmath.log(n), K)
        lnN = mpmath.log(N)
        Ns = _exp_linear(-s0m * lnN, -lnN, K)  # N^(-s)
        if at_pole:
            # (N^(-e) - 1)/e, the pole 1/e removed
            acc = acc + Series([(-lnN) ** (k + 1) / mpmath.factorial(k + 1) for k in range(K)])
        else:
            acc = acc + Ns * N * Series.linear(s0m - 1, 1, K).reciprocal()
        acc = acc + Ns * mpmath.mpf("0.5")
        s = Series.linear(s0m, 1, K)
        rising = s  # s (s+1) ... (s+2k-2)
        Npow = Ns * (mpmath.mpf(1) / N)  # N^(-s-1)
        k = 1
        while True:
            term = rising * Npow * (mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k))
            acc = acc + term
            size = max(abs(x) for x in term.c)
            if size < tol * 1e-3 and k > 2:
                break
            if k > 200:
                raise ArithmeticError("Euler-Maclaurin did not reach tolerance")
            rising = rising * Series.linear(s0m + 2 * k - 1, 1, K) * Series.linear(s0m + 2 * k, 1, K)
            Npow = Npow * (mpmath.mpf(1) / N ** 2)
            k += 1
        return tuple(acc.c)


def _key(s):
    s = complex(s) if isinstance(s, complex) else s
    return mpmath.mpmathify(s)


def zeta_taylor(s, order: int = 3, precision: float = 1e-15):
    """[zeta(s), zeta'(s), zeta''(s)/2, ...] by Euler-Maclaurin."""
    sm = _key(s)
    if sm == 1:
        raise PoleError("zeta has a pole at s = 1")
    return list(_zeta_series(sm, order, _dps(precision), precision))


def euler_factor_series(s, S: PrimeSet, order: int = 3, dps: int = 40):
    """Taylor coefficients of prod_{p in S_fin} (1 - p^(-s)) at s."""
    with mpmath.workdps(dps):
        sm = mpmath.mpmathify(s)
        out = Series.const(mpmath.mpf(1), order)
        for p in S.S_fin:
            lp = mpmath.log(p)
            e = _exp_linear(-sm * lp, -lp, order)
            out = out * (Series.const(mpmath.mpf(1), order) + e * (-1))
        return out.c


def _to_py(x):
    if isinstance(x, mpmath.mpc):
        return complex(x) if x.imag != 0 else float(x.real)
    return float(x)


def zeta_partial(s, S=None, precision: float = 1e-15):
    """zeta(s) prod_{p in S_fin}(1 - p^-s)."""
    S = PrimeSet.parse(S)
    z = zeta_taylor(s, 1, precision)
    with mpmath.workdps(_dps(precision)):
        e = euler_factor_series(s, S, 1, _dps(precision))
        return _to_py(z[0] * e[0])


def zeta_partial_derivative(s, S=None, precision: float = 1e-15):
    S = PrimeSet.parse(S)
    z = zeta_taylor(s, 2, precision)
    with mpmath.workdps(_dps(precision)):
        e = euler_factor_series(s, S, 2, _dps(precision))
        return _to_py(z[1] * e[0] + z[0] * e[1])


def stieltjes_constants(n_max: int = 2, precision: float = 1e-15) -> list:
    """gamma_0 .. gamma_{n_max-1} from zeta(1+e) - 1/e = sum (-1)^n gamma_n e^n / n!."""
    dps = _dps(precision)
    c = _zeta_series(mpmath.mpf(1), n_max, dps, precision)
    with mpmath.workdps(dps):
        return [float((-1) ** n * mpmath.factorial(n) * c[n]) for n in range(n_max)]


# -- Laurent data at s = 1 ---------------------------------------------------------

@dataclass(frozen=True)
class ZetaLaurent:
    """(s-1) L^S(s) = c0 + c1 (s-1) + c2 (s-1)^2 + ..."""

    c0: float
    c1: float
    c2: float
    S: PrimeSet = field(default_factory=PrimeSet)

    def to_dict(self) -> dict:
        return {"S": self.S.label(), "c0": self.c0, "c1": self.c1, "c2": self.c2,
                "provenance": "computed (Euler-Maclaurin series with exact Euler factors)"}


def _laurent_mp(S: PrimeSet, precision: float):
    dps = _dps(precision)
    reg = _zeta_series(mpmath.mpf(1), 3, dps, precision)
    with mpmath.workdps(dps):
        # (s-1) zeta(s) = 1 + reg[0] e + reg[1] e^2 + ...
        fz = Series([mpmath.mpf(1), reg[0], reg[1]])
        e = Series(euler_factor_series(1, S, 3, dps))
        return (fz * e).c


def laurent_at_one(S=None, precision: float = 1e-15) -> ZetaLaurent:
    S = PrimeSet.parse(S)
    c = _laurent_mp(S, precision)
    return ZetaLaurent(float(c[0]), float(c[1]), float(c[2]), S)


def laurent_finite_difference(S=None, h: float = 1e-3, levels: int = 4, dps: int = 50) -> ZetaLaurent:
    """Independent route: differences of F(s) = (s-1) L^S(s) at 1 +- h_k, Richardson in h^2.

    F is evaluated with mpmath's zeta, so this shares no code with the series route.
    """
    S = PrimeSet.parse(S)
    with mpmath.workdps(dps):
        def F(s):
            v = (s - 1) * mpmath.zeta(s)
            for p in S.S_fin:
                v *= 1 - mpmath.power(p, -s)
            return v

        c0 = mpmath.mpf(1)
        for p in S.S_fin:
            c0 *= 1 - mpmath.mpf(1) / p
        hs = [mpmath.mpf(h) / 2 ** k for k in range(levels)]
        d1 = [(F(1 + hk) - F(1 - hk)) / (2 * hk) for hk in hs]
        d2 = [(F(1 + hk) - 2 * c0 + F(1 - hk)) / (2 * hk ** 2) for hk in hs]

        def extrap(vals):
            t = list(vals)
            for m in range(1, len(t)):
                f = mpmath.mpf(4) ** m
                t = [(f * t[i + 1] - t[i]) / (f - 1) for i in range(len(t) - 1)]
            return t[0]

        return ZetaLaurent(float(c0), float(extrap(d1)), float(extrap(d2)), S)


# -- local log-norm integral --------------------------------------------------------

@dataclass(frozen=True)
class LocalIntegral:
    p: int
    value: float
    expression: str

    def to_dict(self) -> dict:
        return {"p": self.p, "closed_form": self.value, "expression": self.expression}


def local_log_norm_integral(p: int) -> LocalIntegral:
    """Integral of log max(|n13|_p, |n23|_p) over Z_p^2 = p^-2 log(p^-1) / (1 - p^-2)."""
    if not _is_prime(int(p)):
        raise ValueError(f"{p} is not prime")
    p = int(p)
    q = Fraction(1, p * p)
    ratio = q / (1 - q)  # rational part
    return LocalIntegral(p, -float(ratio) * math.log(p), f"-({ratio}) * log({p})")


def local_integral_enumeration(p: int, k: int) -> float:
    """Residue classes of Z_p^2 mod p^k, each of measure p^-2k, weighted by log of
    the max-norm of a representative; the zero class is given norm p^-k.

    Walks the digit tree: at level j the p^2 - 1 nonzero digit pairs all have
    norm p^-j, the zero pair descends to level j + 1.
    """
    if k < 1:
        raise ValueError("depth must be >= 1")
    lp = math.log(p)
    total = math.fsum((p * p - 1) * float(Fraction(1, p ** (2 * j + 2))) * (-j * lp) for j in range(k))
    return total + float(Fraction(1, p ** (2 * k))) * (-k * lp)


def local_integral_bruteforce(p: int, k: int) -> float:
    """Literal enumeration of all p^2k pairs mod p^k (small p^k only)."""
    m = p ** k
    if m * m > 5_000_000:
        raise ValueError("too many classes for brute force")
    a = np.arange(m)
    # v(a) = largest j <= k with p^j | a
    v = np.zeros(m, dtype=int)
    for j in range(1, k + 1):
        v[a % p ** j == 0] = j
    vmin = np.minimum.outer(v, v)
    return float(np.sum(-vmin * math.log(p)) / (m * m))


# -- coefficients ---------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientSet:
    a_M0_1: float
    a_M21_1: float
    a_G_1: float
    a_M21_min: float
    a_G_min: float
    a_G_reg: float
    config_echo: dict

    def to_dict(self) -> dict:
        return {
            "a_M0_1": self.a_M0_1, "a_M21_1": self.a_M21_1, "a_G_1": self.a_G_1,
            "a_M21_min": self.a_M21_min, "a_G_min": self.a_G_min, "a_G_reg": self.a_G_reg,
            "config_echo": self.config_echo,
        }


def assemble_coefficients(S=None, volumes=None, c_Q: float = 1.0, C: float = 0.0,
                          precision: float = 1e-12, ln2_placement: str = "outside") -> CoefficientSet:
    """Coefficients of the unipotent expansion for the orbit with a central eigenvalue.

    ``c_Q`` is the configured vol(Q \\ A^1); the residue c_Q^S that appears next to
    the Laurent data is computed from S.  ``ln2_placement`` selects whether ln 2 is
    subtracted after (outside) or before (inside) multiplying by vol_M21.
    """
    S = PrimeSet.parse(S)
    vol = {"vol_M0": 1.0, "vol_M21": 1.0, "vol_G": 1.0}
    vol.update(volumes or {})
    for k, v in vol.items():
        if not v > 0:
            raise ValueError(f"{k} must be positive")
    if not c_Q > 0:
        raise ValueError("c_Q must be positive")
    if ln2_placement not in ("inside", "outside"):
        raise ValueError("ln2_placement must be 'inside' or 'outside'")
    L = laurent_at_one(S, precision)
    ln2 = math.log(2.0)
    ratio = zeta_partial_derivative(2, S, precision) / zeta_partial(2, S, precision)
    a_m21 = vol["vol_M0"] / (2 * c_Q) * (L.c1 - L.c0 * ln2)
    if ln2_placement == "outside":
        a_gmin = vol["vol_M21"] * ratio - ln2
    else:
        a_gmin = vol["vol_M21"] * (ratio - ln2)
    a_greg = vol["vol_M0"] / (3 * c_Q ** 2) * (L.c1 ** 2 + L.c2 * L.c0 + C)
    echo = {
        "S": S.label(), "precision": precision, "ln2_placement": ln2_placement,
        "vol_M0": vol["vol_M0"], "vol_M21": vol["vol_M21"], "vol_G": vol["vol_G"],
        "c_Q": c_Q, "C": C,
        "a_G_reg_slope_in_C": str(Fraction(vol["vol_M0"]) / (3 * Fraction(c_Q) ** 2)),
        "residue_c_Q_S": L.c0, "laurent_c1": L.c1, "laurent_c2": L.c2, "zeta_ratio_at_2": ratio,
        "provenance": {
            "volumes": "configured", "c_Q": "configured", "C": "configured (default 0)",
            "laurent": f"computed (Euler-Maclaurin, precision {precision})",
            "zeta_ratio_at_2": f"computed (Euler-Maclaurin, precision {precision})",
        },
    }
    return CoefficientSet(vol["vol_M0"], vol["vol_M21"], vol["vol_G"], a_m21, a_gmin, a_greg, echo)


def trivial_class_term(z, f_value_at_z: float, vol_G: float = 1.0) -> float:
    """vol_G * f(z) for the class of the central element z."""
    return vol_G * f_value_at_z
