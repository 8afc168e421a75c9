"""Root data of GL(3) on a_0 = R^3.

Everything here is exact: coordinates are ``fractions.Fraction`` and the
invariant form is the standard dot product, so the Weyl group acts by
coordinate permutations and pairings never round.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class AVector:
    """Element of a_0 in the basis e1, e2, e3."""

    coords: tuple

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, float, str)):
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError(f"AVector needs 3 coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", tuple(_q(c) for c in coords))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        return AVector(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return AVector(*(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return AVector(*(-a for a in self))

    def __mul__(self, c):
        c = _q(c)
        return AVector(*(c * a for a in self))

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = _q(c)
        return AVector(*(a / c for a in self))

    def dot(self, other) -> Fraction:
        return sum((a * b for a, b in zip(self, other)), Fraction(0))

    __matmul__ = dot

    def total(self) -> Fraction:
        return sum(self.coords, Fraction(0))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def to_float(self):
        return tuple(float(c) for c in self.coords)

    def __repr__(self):
        return "AVector(" + ", ".join(str(c) for c in self.coords) + ")"


ZERO = AVector(0, 0, 0)
E = (AVector(1, 0, 0), AVector(0, 1, 0), AVector(0, 0, 1))


@dataclass(frozen=True)
class Root:
    vector: AVector
    name: str

    def __call__(self, H: AVector) -> Fraction:
        return self.vector.dot(H)

    def coroot(self) -> AVector:
        # alpha^vee = 2 alpha / <alpha, alpha>
        return self.vector * (Fraction(2) / self.vector.dot(self.vector))

    def __neg__(self):
        name = self.name[1:] if self.name.startswith("-") else "-" + self.name
        return Root(-self.vector, name)


ALPHA = Root(E[0] - E[1], "alpha")
BETA = Root(E[1] - E[2], "beta")
POSITIVE_ROOTS = (ALPHA, BETA, Root(E[0] - E[2], "alpha+beta"))
ROOTS = POSITIVE_ROOTS + tuple(-r for r in POSITIVE_ROOTS)

VARPI = {
    "alpha": AVector(Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3)),
    "beta": AVector(Fraction(1, 3), Fraction(1, 3), Fraction(-2, 3)),
}
SIMPLE = {"alpha": ALPHA, "beta": BETA}


def simple_roots():
    return ALPHA, BETA


def dual_weights():
    wa, wb = VARPI["alpha"], VARPI["beta"]
    assert wa.dot(BETA.vector) == 0 and wb.dot(ALPHA.vector) == 0
    assert wa.dot(ALPHA.coroot()) == 1 and wb.dot(BETA.coroot()) == 1
    return wa, wb


def varpi(name: str) -> AVector:
    return VARPI[name]


# -- linear algebra on small rational subspaces -------------------------------

def _solve(A, b):
    """Solve the square rational system A x = b by Gauss-Jordan."""
    n = len(A)
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def project_onto_span(H: AVector, basis) -> AVector:
    """Orthogonal projection of H onto span(basis), basis linearly independent."""
    basis = list(basis)
    if not basis:
        return ZERO
    gram = [[u.dot(v) for v in basis] for u in basis]
    rhs = [u.dot(H) for u in basis]
    coef = _solve(gram, rhs)
    out = ZERO
    for c, u in zip(coef, basis):
        out = out + u * c
    return out


# -- standard parabolics -------------------------------------------------------

class StandardParabolic(enum.Enum):
    P0 = "P0"
    P21 = "P21"
    P12 = "P12"
    G = "G"

    @property
    def levi_simple(self) -> frozenset:
        """Labels of the simple roots lying in the Levi (Delta_0^P)."""
        return _LEVI[self]

    @property
    def corank(self) -> int:
        """dim(A_P / Z)."""
        return 2 - len(self.levi_simple)

    @property
    def simple_labels(self) -> tuple:
        return tuple(x for x in ("alpha", "beta") if x not in self.levi_simple)

    @property
    def delta(self) -> tuple:
        """Delta_P as roots: simple roots outside the Levi, projected to a_P."""
        return tuple(
            Root(project_to_aP(SIMPLE[x].vector, self), x) for x in self.simple_labels
        )

    @property
    def delta_hat(self) -> tuple:
        return tuple(VARPI[x] for x in self.simple_labels)

    @property
    def rho(self) -> AVector:
        return rho(self)

    def __le__(self, other):
        return self.levi_simple <= other.levi_simple

    def __lt__(self, other):
        return self.levi_simple < other.levi_simple

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self


_LEVI = {
    StandardParabolic.P0: frozenset(),
    StandardParabolic.P21: frozenset({"alpha"}),
    StandardParabolic.P12: frozenset({"beta"}),
    StandardParabolic.G: frozenset({"alpha", "beta"}),
}
P0, P21, P12, G = (StandardParabolic.P0, StandardParabolic.P21,
                   StandardParabolic.P12, StandardParabolic.G)
PARABOLICS = (P0, P21, P12, G)


def parabolic(name) -> StandardParabolic:
    if isinstance(name, StandardParabolic):
        return name
    return StandardParabolic(str(name).upper().replace("GL3", "G"))


def project(H: AVector, P: StandardParabolic):
    """Split H into its a_0^P and a_P components."""
    H = H if isinstance(H, AVector) else AVector(H)
    inner = project_onto_span(H, [SIMPLE[x].vector for x in sorted(P.levi_simple)])
    outer = H - inner
    for x in P.levi_simple:
        assert SIMPLE[x](outer) == 0
    return inner, outer


def project_to_aP(H: AVector, P: StandardParabolic) -> AVector:
    return project(H, P)[1]


def delta_relative(P1: StandardParabolic, P2: StandardParabolic) -> tuple:
    """Delta_{P1}^{P2}: simple roots of (P1 cap M2, A_{P1}) as functionals on a_0."""
    if not P1 <= P2:
        raise ValueError(f"{P1.value} is not contained in {P2.value}")
    labels = [x for x in ("alpha", "beta") if x in P2.levi_simple and x not in P1.levi_simple]
    return tuple(Root(project_to_aP(SIMPLE[x].vector, P1), x) for x in labels)


def rho(P: StandardParabolic) -> AVector:
    """Half the sum of the roots of A_P on the Lie algebra of N_P."""
    P = parabolic(P)
    total = ZERO
    for r in POSITIVE_ROOTS:
        in_levi = project_onto_span(r.vector, [SIMPLE[x].vector for x in P.levi_simple]) == r.vector
        if not in_levi:
            total = total + r.vector
    return total / 2


def gram_determinant(P: StandardParabolic) -> Fraction:
    P = parabolic(P)
    if P is G:
        raise ValueError("a_G is not defined: Delta_hat_G is empty")
    w = P.delta_hat
    gram = [[u.dot(v) for v in w] for u in w]
    if len(w) == 1:
        return gram[0][0]
    return gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]


def gram_constant(P: StandardParabolic, dps: int | None = None):
    """a_P = det(<varpi_m, varpi_n>)^(1/2).  Float by default, mpf at ``dps`` digits."""
    d = gram_determinant(P)
    if dps is None:
        return math.sqrt(d.numerator / d.denominator)
    with mpmath.workdps(dps):
        return +mpmath.sqrt(mpmath.mpf(d.numerator) / d.denominator)


# -- Weyl group ----------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    """Permutation of {0, 1, 2}; sends coordinate i of H to position perm[i]."""

    perm: tuple

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2]:
            raise ValueError(f"not a permutation of (0,1,2): {self.perm}")

    def __call__(self, H):
        H = H if isinstance(H, AVector) else AVector(H)
        out = [None] * 3
        for i, j in enumerate(self.perm):
            out[j] = H[i]
        return AVector(*out)

    def apply_float(self, v):
        out = [0.0] * 3
        for i, j in enumerate(self.perm):
            out[j] = v[i]
        return out

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (s*t)(H) = s(t(H))
        return WeylElement(tuple(self.perm[other.perm[i]] for i in range(3)))

    def inverse(self) -> "WeylElement":
        inv = [0] * 3
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElement(tuple(inv))

    def matrix(self):
        """Permutation matrix w_s with w_s diag(h) w_s^-1 = diag(s h)."""
        m = [[0] * 3 for _ in range(3)]
        for i, j in enumerate(self.perm):
            m[j][i] = 1
        return m

    @property
    def sign(self) -> int:
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if self.perm[i] > self.perm[j])
        return -1 if inv % 2 else 1

    @property
    def label(self) -> str:
        return "".join(str(i + 1) for i in self.perm)

    def __repr__(self):
        return f"WeylElement({self.label})"


IDENTITY = WeylElement((0, 1, 2))


@lru_cache(maxsize=None)
def weyl_group() -> tuple:
    return tuple(WeylElement(p) for p in itertools.permutations(range(3)))


def weyl_table() -> dict:
    W = weyl_group()
    return {(s.label, t.label): (s * t).label for s in W for t in W}


def is_positive_root(v: AVector) -> bool:
    return any(v == r.vector for r in POSITIVE_ROOTS)


def _restriction_key(s: WeylElement, source: StandardParabolic):
    basis = _subspace_basis(source)
    return tuple(s(b) for b in basis)


@lru_cache(maxsize=None)
def _subspace_basis(P: StandardParabolic):
    """A rational basis of a_P."""
    cand = [project_to_aP(e, P) for e in E]
    basis = []
    for v in cand:
        if v.is_zero():
            continue
        if basis and project_onto_span(v, basis) == v:
            continue
        basis.append(v)
    return tuple(basis)


def _same_subspace(vectors, P: StandardParabolic) -> bool:
    target = _subspace_basis(P)
    if len(vectors) != len(target):
        return False
    return all(project_onto_span(v, target) == v for v in vectors)


def _contains(P_big_space: StandardParabolic, P_small_space: StandardParabolic) -> bool:
    """Whether a_{P_big_space} contains a_{P_small_space}."""
    big = _subspace_basis(P_big_space)
    return all(project_onto_span(v, big) == v for v in _subspace_basis(P_small_space))


def _positive_on(functional: AVector, source: StandardParabolic) -> bool:
    """Is ``functional`` (a vector in a_source) the restriction of a positive root?"""
    for r in POSITIVE_ROOTS:
        pr = project_to_aP(r.vector, source)
        if not pr.is_zero() and pr == functional:
            return True
    return False


def omega_restricted(source, target) -> list:
    """Omega(a_source; P): the Weyl restrictions s with s a_source = a_{P'} standard,
    a_{P'} containing a_P, and s^-1 alpha positive for alpha in Delta_{P'}^P.

    One representative WeylElement is returned per distinct restriction.
    """
    source, target = parabolic(source), parabolic(target)
    if source is G:
        raise ValueError("source must be a proper parabolic")
    seen = {}
    for s in weyl_group():
        key = _restriction_key(s, source)
        if key in seen:
            continue
        image_parabolic = next((Pp for Pp in PARABOLICS if _same_subspace(key, Pp)), None)
        if image_parabolic is None or not _contains(image_parabolic, target):
            continue
        if not image_parabolic <= target:
            continue
        s_inv = s.inverse()
        ok = all(
            _positive_on(project_to_aP(s_inv(a.vector), source), source)
            for a in delta_relative(image_parabolic, target)
        )
        if ok:
            seen[key] = s
    return list(seen.values())


def root_data() -> dict:
    """JSON-ready summary of the root data."""
    def vec(v):
        return [str(c) for c in v]

    out = {
        "simple_roots": {r.name: vec(r.vector) for r in simple_roots()},
        "dual_weights": {k: vec(v) for k, v in VARPI.items()},
        "parabolics": {},
        "weyl_group": [s.label for s in weyl_group()],
    }
    for P in PARABOLICS:
        entry = {
            "corank": P.corank,
            "delta": {r.name: vec(r.vector) for r in P.delta},
            "delta_hat": [vec(w) for w in P.delta_hat],
            "rho": vec(rho(P)),
        }
        if P is not G:
            entry["gram_determinant"] = str(gram_determinant(P))
            entry["a_P"] = gram_constant(P)
        out["parabolics"][P.value] = entry
    return out
