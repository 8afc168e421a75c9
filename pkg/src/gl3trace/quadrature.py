"""Archimedean weighted orbital integrals for unipotent classes of GL(3).

Every integral here is over some coordinates of z * n(v12, v13, v23) with an
explicit weight built from log|v|.  The engine is a tensor product of 1-D rules:

* ``log`` axes carry a log-power singularity at 0.  Each half line is split at
  s0 = min(split, R); on [0, s0] we substitute v = s0 exp(-t), which turns
  (log v)^k dv into a polynomial times exp(-t) dt, then use composite
  Gauss-Legendre in t.  On [s0, R] plain composite Gauss-Legendre.
* ``smooth`` axes use composite Gauss-Legendre on [-R, R].
* ``polar`` pairs (r, theta) handle weights singular only at a point:
  a one-sided log axis in r times the trapezoid rule in theta.

The error estimate is the change under doubling the Gauss-Legendre order on
every panel (and the theta count).  Accumulation runs in a fixed order so the
result is bit-for-bit reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from functools import lru_cache

import numpy as np

LN2 = math.log(2.0)


class QuadratureToleranceError(ArithmeticError):
    """Raised when the refinement estimate exceeds the tolerance; carries the best value."""

    def __init__(self, msg, value, error_estimate):
        super().__init__(msg)
        self.value = value
        self.error_estimate = error_estimate


# -- test functions ---------------------------------------------------------------

def _as_matrix(c) -> np.ndarray:
    if hasattr(c, "entries"):
        return np.array([float(x) for x in c.entries]).reshape(3, 3)
    a = np.asarray(c, dtype=float)
    if a.ndim == 0:
        return float(a) * np.eye(3)
    return a.reshape(3, 3)


@dataclass(frozen=True)
class TestFunction:
    """Gaussian in the Frobenius distance to ``center``: exp(-|x - C|_F^2 / 2 sigma^2).

    Conjugation invariant when the center is scalar.  Otherwise wrap it with
    :func:`k_average` before integrating.
    """

    center: tuple = (1.0, 0, 0, 0, 1.0, 0, 0, 0, 1.0)
    sigma: float = 1.0
    family: str = "GaussianFrobenius"

    __test__ = False  # not a pytest class

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(x) for x in _as_matrix(self.center).ravel()))
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if self.family != "GaussianFrobenius":
            raise ValueError(f"unknown family {self.family}")

    @classmethod
    def scalar(cls, z=1.0, sigma=1.0) -> "TestFunction":
        return cls(tuple((float(z) * np.eye(3)).ravel()), sigma)

    @property
    def conjugation_invariant(self) -> bool:
        C = self.matrix
        return bool(np.all(C == C[0, 0] * np.eye(3)))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.center).reshape(3, 3)

    def __call__(self, X):
        D = np.asarray(X, dtype=float) - self.matrix
        return np.exp(-np.einsum("...ij,...ij->...", D, D) / (2.0 * self.sigma ** 2))

    def radius(self, z, eps: float = 1e-17) -> float:
        """|v| beyond which f(z n) < eps for any unipotent n with coordinate v."""
        off = float(np.linalg.norm(float(z) * np.eye(3) - self.matrix))
        return (off + self.sigma * math.sqrt(2.0 * math.log(1.0 / eps))) / abs(float(z))

    def width(self, z) -> float:
        return self.sigma / abs(float(z))


class ZeroFunction:
    def __call__(self, X):
        return np.zeros(np.shape(X)[:-2])

    def radius(self, z, eps=1e-17):
        return 1.0

    def width(self, z):
        return 1.0

    def __eq__(self, other):
        return isinstance(other, ZeroFunction)

    def __hash__(self):
        return hash("ZeroFunction")


def so3_rule(n: int = 8):
    """Rotations and weights (summing to 1) for Haar measure on SO(3), ZYZ Euler angles."""
    a = 2 * np.pi * np.arange(n) / n
    x, wx = np.polynomial.legendre.leggauss(n)  # cos(beta)
    rots, wts = [], []
    for ai in a:
        for cb, wb in zip(x, wx):
            sb = math.sqrt(max(0.0, 1 - cb * cb))
            for gi in a:
                Ra = np.array([[math.cos(ai), -math.sin(ai), 0], [math.sin(ai), math.cos(ai), 0], [0, 0, 1]])
                Rb = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
                Rg = np.array([[math.cos(gi), -math.sin(gi), 0], [math.sin(gi), math.cos(gi), 0], [0, 0, 1]])
                rots.append(Ra @ Rb @ Rg)
                wts.append(wb / 2 / n / n)
    return np.array(rots), np.array(wts)


@dataclass(frozen=True)
class KAveraged:
    """x -> sum_k w_k f(k^-1 x k) over an SO(3) product rule."""

    f: object
    n: int = 8

    def __call__(self, X):
        R, w = so3_rule_cached(self.n)
        X = np.asarray(X, dtype=float)
        out = np.zeros(X.shape[:-2])
        for Rk, wk in zip(R, w):
            out = out + wk * self.f(np.einsum("ji,...jk,kl->...il", Rk, X, Rk))
        return out

    def radius(self, z, eps=1e-17):
        return self.f.radius(z, eps)

    def width(self, z):
        return self.f.width(z)


@lru_cache(maxsize=8)
def so3_rule_cached(n):
    return so3_rule(n)


def k_average(f, n: int = 8):
    if isinstance(f, TestFunction) and f.conjugation_invariant:
        return f
    return KAveraged(f, n)


# -- specs -------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-7
    rel_tol: float = 1e-9
    max_depth: int = 2
    singularity_splits: tuple = (1.0,)
    order: int = 8
    radius: float | None = None  # overrides the test function's own radius
    width: float | None = None   # outer panel width
    t_max: float = 40.0
    theta_points: int = 48
    max_points: int = 150_000_000  # refinement stops before a grid larger than this

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        object.__setattr__(self, "singularity_splits", tuple(float(s) for s in self.singularity_splits))

    def echo(self) -> dict:
        d = asdict(self)
        d["singularity_splits"] = list(self.singularity_splits)
        return d


@dataclass(frozen=True)
class WeightParams:
    """T = T1 (e1 - e2) + T2 (e2 - e3); ``constant`` None means the O(1) term is dropped."""

    T1: float = 0.0
    T2: float = 0.0
    constant: float | None = None

    @property
    def c(self) -> float:
        return 0.0 if self.constant is None else float(self.constant)

    @property
    def constant_mode(self) -> str:
        return "DropO1" if self.constant is None else f"UserConstant({self.constant!r})"


@dataclass
class QuadResult:
    value: float
    error_estimate: float
    spec_echo: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"value": self.value, "error_estimate": self.error_estimate, "spec_echo": self.spec_echo}


# -- 1-D rules -------------------------------------------------------------------------

_T_PANELS = (0.0, 0.75, 2.0, 4.0, 7.0, 11.0, 17.0, 25.0)


def _gl(a, b, m):
    x, w = np.polynomial.legendre.leggauss(m)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def _composite(edges, m):
    xs, ws = zip(*(_gl(a, b, m) for a, b in zip(edges[:-1], edges[1:])))
    return np.concatenate(xs), np.concatenate(ws)


def _panels(a, b, width):
    n = max(1, int(math.ceil((b - a) / width - 1e-12)))
    return np.linspace(a, b, n + 1)


def _half_log_rule(R, split, width, m, t_max):
    """Nodes in (0, R] for integrands with a log-power singularity at 0."""
    s0 = min(split, R)
    edges_t = [t for t in _T_PANELS if t < t_max] + [t_max]
    t, wt = _composite(edges_t, m)
    xin = s0 * np.exp(-t)
    win = wt * xin
    if R > s0:
        xo, wo = _composite(_panels(s0, R, width), m)
        return np.concatenate([xin[::-1], xo]), np.concatenate([win[::-1], wo])
    return xin[::-1], win[::-1]


def axis_rule(kind, R, split, width, m, t_max, theta_points=48):
    if kind == "log":
        x, w = _half_log_rule(R, split, width, m, t_max)
        return np.concatenate([-x[::-1], x]), np.concatenate([w[::-1], w])
    if kind == "radial":
        return _half_log_rule(R, split, width, m, t_max)
    if kind == "smooth":
        return _composite(_panels(-R, R, width), m)
    if kind == "theta":
        n = theta_points
        return 2 * np.pi * np.arange(n) / n, np.full(n, 2 * np.pi / n)
    raise ValueError(kind)


# -- integrand layouts -----------------------------------------------------------------
# Each layout names its axes and maps axis nodes to (v12, v13, v23) plus the
# log-values the weights need.  Weights are vectors of "moments" so several
# weights (and all T-polynomial pieces) come out of one pass.

LAYOUTS = {
    # name: (axis kinds, coordinates)
    "m0": (("log", "log"), ("v12", "v23")),            # n(v1, 0, v3)
    "n21_polar": (("radial", "theta"), ("polar13_23",)),  # n(0, v2, v3) in polar form
    "n21": (("smooth", "smooth"), ("v13", "v23")),
    "n0_log": (("log", "smooth", "log"), ("v12", "v13", "v23")),
    "n0": (("smooth", "smooth", "smooth"), ("v12", "v13", "v23")),
}


def _coords(layout, grids):
    """(v12, v13, v23, extra) arrays from the per-axis node grids."""
    if layout == "m0":
        a, b = grids
        zero = np.zeros_like(a)
        return a, zero, b, {"L12": np.log(np.abs(a)), "L23": np.log(np.abs(b))}
    if layout == "n21_polar":
        r, th = grids
        return np.zeros_like(r), r * np.cos(th), r * np.sin(th), {"Lr": np.log(r), "jac": r}
    if layout == "n21":
        a, b = grids
        return np.zeros_like(a), a, b, {}
    if layout == "n0_log":
        a, b, c = grids
        return a, b, c, {"L12": np.log(np.abs(a)), "L23": np.log(np.abs(c))}
    if layout == "n0":
        a, b, c = grids
        return a, b, c, {}
    raise ValueError(layout)


# moment names -> function of extra dict (ones = plain integral)
def _moment(name, ex, shape):
    if name == "1":
        return np.ones(shape)
    if name == "L12":
        return ex["L12"]
    if name == "L23":
        return ex["L23"]
    if name == "L12^2":
        return ex["L12"] ** 2
    if name == "L23^2":
        return ex["L23"] ** 2
    if name == "L12*L23":
        return ex["L12"] * ex["L23"]
    if name == "Lr":
        return ex["Lr"]
    raise ValueError(name)


def _scales(f, z, spec):
    R = spec.radius if spec.radius is not None else f.radius(z)
    w = spec.width if spec.width is not None else f.width(z)
    return float(R), float(w)


def _rules(f, z, spec, layout, level):
    kinds, _ = LAYOUTS[layout]
    R, width = _scales(f, z, spec)
    split = spec.singularity_splits[0] if spec.singularity_splits else 1.0
    m = spec.order * 2 ** level
    return [axis_rule(k, R, split, width, m, spec.t_max, spec.theta_points * 2 ** level) for k in kinds]


def grid_size(f, z, spec, layout, level) -> int:
    return int(np.prod([len(r[0]) for r in _rules(f, z, spec, layout, level)]))


@lru_cache(maxsize=64)
def _moments(f, z, spec: QuadratureSpec, layout: str, names: tuple, level: int) -> tuple:
    rules = _rules(f, z, spec, layout, level)
    zf = float(z)
    acc = np.zeros(len(names))
    x0, w0 = rules[0]
    rest = rules[1:]
    mesh = np.meshgrid(*[r[0] for r in rest], indexing="ij")
    wmesh = rest[0][1]
    for r in rest[1:]:
        wmesh = np.multiply.outer(wmesh, r[1])
    for xi, wi in zip(x0, w0):
        grids = [np.full(mesh[0].shape, xi)] + list(mesh)
        v12, v13, v23, ex = _coords(layout, grids)
        X = np.zeros(v12.shape + (3, 3))
        X[..., 0, 0] = X[..., 1, 1] = X[..., 2, 2] = zf
        X[..., 0, 1] = zf * v12
        X[..., 0, 2] = zf * v13
        X[..., 1, 2] = zf * v23
        fv = np.asarray(f(X), dtype=float) * wmesh * wi
        if "jac" in ex:
            fv = fv * ex["jac"]
        for k, nm in enumerate(names):
            acc[k] += float(np.sum(fv * _moment(nm, ex, fv.shape)))
    return tuple(acc)


def _integrate(f, z, spec, layout, names, combine, echo):
    """Refine until two successive levels agree; combine(moments) -> value."""
    prev = combine(_moments(f, z, spec, layout, names, 0))
    err = math.inf
    for level in range(1, spec.max_depth + 1):
        if grid_size(f, z, spec, layout, level) > spec.max_points:
            break
        cur = combine(_moments(f, z, spec, layout, names, level))
        err = abs(cur - prev)
        prev = cur
        if err <= max(spec.abs_tol, spec.rel_tol * abs(cur)):
            return QuadResult(cur, err, echo)
    raise QuadratureToleranceError(
        f"tolerance not met: error estimate {err:.3e} > {max(spec.abs_tol, spec.rel_tol * abs(prev)):.3e}",
        prev, err)


def _echo(op, f, z, spec, params=None, **extra):
    d = {"op": op, "z": float(z), "quadrature": spec.echo()}
    if isinstance(f, TestFunction):
        d["test_function"] = {"family": f.family, "center": list(f.center), "sigma": f.sigma}
    if params is not None:
        d["T1"], d["T2"], d["constant_mode"] = params.T1, params.T2, params.constant_mode
    d.update(extra)
    return d


def _prepare(f):
    if isinstance(f, TestFunction) and not f.conjugation_invariant:
        return KAveraged(f)
    return f


# -- the integrals ---------------------------------------------------------------

def j_m0(f, spec: QuadratureSpec = QuadratureSpec(), params: WeightParams = WeightParams(), z=1.0) -> QuadResult:
    """Integral of f(z n(v1, 0, v3)) g(v1, v3) with
    g = 1/2 (L1^2 + L3^2) + 2 L1 L3 + 3 ln2 (L1 + L3) + O(1),  L = log|v|."""
    f = _prepare(f)
    names = ("1", "L12", "L23", "L12^2", "L23^2", "L12*L23")

    def combine(mo):
        i, l1, l3, l11, l33, l13 = mo
        return 0.5 * (l11 + l33) + 2 * l13 + 3 * LN2 * (l1 + l3) + params.c * i

    return _integrate(f, z, spec, "m0", names, combine, _echo("jm0", f, z, spec, params))


def j_m21(f, spec: QuadratureSpec = QuadratureSpec(), z=1.0) -> QuadResult:
    """Integral of f(z n(0, v2, v3)) * 1/2 log(4 (v2^2 + v3^2)), in polar coordinates."""
    f = _prepare(f)
    names = ("1", "Lr")
    return _integrate(f, z, spec, "n21_polar", names, lambda mo: LN2 * mo[0] + mo[1],
                      _echo("jm21", f, z, spec))


def g_m0_T(L12, L23, T1, T2, C=0.0):
    """The M_0 weight with truncation parameter, natural logs of |v12|, |v23|."""
    return (0.5 * (L12 ** 2 + L23 ** 2 + 4 * L12 * L23)
            + 3 * T2 * (LN2 + L12) + 3 * T1 * (LN2 + L23) + 3 * (LN2 + L12 + L23)
            - 1.5 * T1 ** 2 - 1.5 * T2 ** 2 + 6 * T1 * T2 + C)


def j_m0_T(z, f, spec: QuadratureSpec = QuadratureSpec(), params: WeightParams = WeightParams()) -> QuadResult:
    """Integral over N_0 of f(z n) g_M0(v12, v23, T); v13 is unweighted."""
    f = _prepare(f)
    names = ("1", "L12", "L23", "L12^2", "L23^2", "L12*L23")
    T1, T2, C = params.T1, params.T2, params.c

    def combine(mo):
        i, l1, l3, l11, l33, l13 = mo
        return (0.5 * (l11 + l33 + 4 * l13)
                + 3 * T2 * (LN2 * i + l1) + 3 * T1 * (LN2 * i + l3) + 3 * (LN2 * i + l1 + l3)
                + (-1.5 * T1 ** 2 - 1.5 * T2 ** 2 + 6 * T1 * T2 + C) * i)

    return _integrate(f, z, spec, "n0_log", names, combine, _echo("jm0T", f, z, spec, params))


def j_m21_T(z, f, spec: QuadratureSpec = QuadratureSpec(), params: WeightParams = WeightParams(),
            with_u: int = 0, c_S: float = 1.0) -> QuadResult:
    """with_u=0: over (v13, v23) with log|(v13, v23)| + ln2 + T1 + T2.
    with_u=1: c_S times the integral over N_0 with log|v12 v23| + T1 + T2 + 2 ln2."""
    f = _prepare(f)
    shift = params.T1 + params.T2
    if with_u:
        names = ("1", "L12", "L23")
        return _integrate(f, z, spec, "n0_log", names,
                          lambda mo: c_S * (mo[1] + mo[2] + (shift + 2 * LN2) * mo[0]),
                          _echo("jm21T", f, z, spec, params, with_u=1, c_S=c_S))
    names = ("1", "Lr")
    return _integrate(f, z, spec, "n21_polar", names, lambda mo: mo[1] + (LN2 + shift) * mo[0],
                      _echo("jm21T", f, z, spec, params, with_u=0))


def j_g_unipotent(z, subtype: str, f, spec: QuadratureSpec = QuadratureSpec(), c_S: float = 1.0) -> QuadResult:
    """Plain integral over N_21 (Min) or c_S^2 times the integral over N_0 (Reg)."""
    f = _prepare(f)
    if subtype == "Min":
        return _integrate(f, z, spec, "n21", ("1",), lambda mo: mo[0], _echo("jgmin", f, z, spec))
    if subtype == "Reg":
        return _integrate(f, z, spec, "n0", ("1",), lambda mo: c_S ** 2 * mo[0],
                          _echo("jgreg", f, z, spec, c_S=c_S))
    raise ValueError(f"subtype must be Min or Reg, got {subtype!r}")


def plain_integral(z, f, layout: str, spec: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """Unweighted integral on one of the layouts (used for the T-structure checks)."""
    f = _prepare(f)
    return _integrate(f, z, spec, layout, ("1",), lambda mo: mo[0], _echo("plain", f, z, spec, layout=layout))
