"""Exact orbit classification in GL(3, Q).

Two elements are in the same orbit when their semisimple Jordan parts are
conjugate.  Over Q this is decided by the characteristic polynomial, so the
taxonomy below only needs the factorization of the char poly, the minimal
polynomial and a rank or two.  Everything is done in Fractions.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

# -- matrices -------------------------------------------------------------------


class SingularMatrixError(ValueError):
    pass


def _parse_entry(s) -> Fraction:
    if isinstance(s, (Fraction, int)):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(s)
    return Fraction(str(s).strip())


@dataclass(frozen=True)
class RationalMatrix3:
    """3x3 matrix with Fraction entries, row-major."""

    entries: tuple

    def __post_init__(self):
        e = tuple(_parse_entry(x) for x in self.entries)
        if len(e) != 9:
            raise ValueError(f"need 9 entries, got {len(e)}")
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix3":
        return cls(tuple(x for r in rows for x in r))

    @classmethod
    def parse(cls, text: str) -> "RationalMatrix3":
        """Nine rationals "p/q" or integers, comma separated, row-major."""
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        if len(parts) != 9:
            raise ValueError(f"expected 9 comma-separated rationals, got {len(parts)}")
        return cls(tuple(parts))

    @classmethod
    def identity(cls, z=1) -> "RationalMatrix3":
        z = Fraction(z)
        return cls((z, 0, 0, 0, z, 0, 0, 0, z))

    @classmethod
    def diag(cls, a, b, c) -> "RationalMatrix3":
        return cls((a, 0, 0, 0, b, 0, 0, 0, c))

    @classmethod
    def unipotent(cls, n12, n13, n23, z=1) -> "RationalMatrix3":
        """z * n(n12, n13, n23)."""
        z = Fraction(z)
        return cls((z, z * Fraction(n12), z * Fraction(n13), 0, z, z * Fraction(n23), 0, 0, z))

    @classmethod
    def companion(cls, coeffs) -> "RationalMatrix3":
        """Companion matrix of x^3 + c2 x^2 + c1 x + c0, coeffs = (c2, c1, c0)."""
        c2, c1, c0 = (Fraction(c) for c in coeffs)
        return cls((0, 0, -c0, 1, 0, -c1, 0, 1, -c2))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[3 * i + j]

    def rows(self):
        return [list(self.entries[3 * i:3 * i + 3]) for i in range(3)]

    def __matmul__(self, other: "RationalMatrix3") -> "RationalMatrix3":
        a, b = self.entries, other.entries
        return RationalMatrix3(tuple(
            a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]
            for i in range(3) for j in range(3)))

    def __add__(self, other):
        return RationalMatrix3(tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return RationalMatrix3(tuple(x - y for x, y in zip(self.entries, other.entries)))

    def scale(self, c) -> "RationalMatrix3":
        c = Fraction(c)
        return RationalMatrix3(tuple(c * x for x in self.entries))

    def trace(self) -> Fraction:
        return self.entries[0] + self.entries[4] + self.entries[8]

    def det(self) -> Fraction:
        a, b, c, d, e, f, g, h, i = self.entries
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def minor_sum(self) -> Fraction:
        a, b, c, d, e, f, g, h, i = self.entries
        return (a * e - b * d) + (a * i - c * g) + (e * i - f * h)

    def inverse(self) -> "RationalMatrix3":
        det = self.det()
        if det == 0:
            raise SingularMatrixError("matrix is singular")
        a, b, c, d, e, f, g, h, i = self.entries
        adj = (e * i - f * h, c * h - b * i, b * f - c * e,
               f * g - d * i, a * i - c * g, c * d - a * f,
               d * h - e * g, b * g - a * h, a * e - b * d)
        return RationalMatrix3(tuple(x / det for x in adj))

    def rank(self) -> int:
        return matrix_rank(self.rows())

    def is_scalar(self) -> bool:
        e = self.entries
        return all(e[k] == 0 for k in (1, 2, 3, 5, 6, 7)) and e[0] == e[4] == e[8]

    def to_strings(self) -> list:
        return [str(x) for x in self.entries]


I3 = RationalMatrix3.identity()
ZERO3 = RationalMatrix3((0,) * 9)


def matrix_rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


# -- polynomials: coefficient tuples, highest degree first ---------------------

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[0] == 0:
        p.pop(0)
    return tuple(Fraction(c) for c in p)


def _monic(p):
    p = _trim(p)
    return tuple(c / p[0] for c in p)


def poly_divmod(a, b):
    a, b = list(_trim(a)), _trim(b)
    if b == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and a != [0]:
        f = a[0] / b[0]
        k = len(a) - len(b)
        q[len(q) - 1 - k] = f
        a = [x - f * y for x, y in zip(a, list(b) + [0] * k)]
        a = list(_trim(a))
        if len(a) < len(b):
            break
    return _trim(q), _trim(a)


def poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b != (0,):
        a, b = b, poly_divmod(a, b)[1]
    return _monic(a)


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_deriv(p):
    n = len(p) - 1
    return _trim([c * (n - i) for i, c in enumerate(p[:-1])]) if n > 0 else (Fraction(0),)


def poly_eval_matrix(p, m: RationalMatrix3) -> RationalMatrix3:
    acc = ZERO3
    for c in p:
        acc = acc @ m + I3.scale(c)
    return acc


def poly_str(p) -> str:
    n = len(p) - 1
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        k = n - i
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        else:
            s = f"{c}{'*' + mono if mono else ''}"
        terms.append(s)
    return " + ".join(terms).replace("+ -", "- ") or "0"


def char_poly(g: RationalMatrix3):
    """x^3 - tr x^2 + (sum of principal 2x2 minors) x - det."""
    det = g.det()
    if det == 0:
        raise SingularMatrixError("char_poly needs an invertible matrix")
    return (Fraction(1), -g.trace(), g.minor_sum(), -det)


def _divisors(n: int):
    n = abs(n)
    out = set()
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.update((d, n // d))
    return sorted(out)


def rational_roots(p) -> list:
    """Distinct rational roots via the rational-root test on the integral rescaling."""
    p = _trim(p)
    lcm = math.lcm(*(c.denominator for c in p))
    ints = [int(c * lcm) for c in p]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    roots = []
    if ints[-1] == 0:
        roots.append(Fraction(0))
        while ints and ints[-1] == 0:
            ints.pop()
    if len(ints) <= 1:
        return roots
    for num in _divisors(ints[-1]):
        for den in _divisors(ints[0]):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if r not in roots and sum(c * r ** (len(ints) - 1 - i) for i, c in enumerate(ints)) == 0:
                    roots.append(r)
    return sorted(roots)


def _is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    a, b = q.numerator, q.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def factor_cubic(p) -> list:
    """Irreducible monic factors over Q with multiplicity: [(coeffs, mult), ...]."""
    p = _monic(p)
    factors = []
    rest = p
    for r in rational_roots(p):
        lin = (Fraction(1), -r)
        m = 0
        while len(rest) > 1:
            q, rem = poly_divmod(rest, lin)
            if rem != (0,):
                break
            rest, m = q, m + 1
        factors.append((lin, m))
    if len(rest) > 1:
        # no rational roots left: rest is irreducible (degree <= 3)
        factors.append((rest, 1))
    factors.sort(key=lambda fm: (len(fm[0]), tuple(-c for c in fm[0][1:])))
    return factors


def squarefree_part(p):
    return _monic(poly_divmod(p, poly_gcd(p, poly_deriv(p)))[0])


def minimal_poly(g: RationalMatrix3):
    facs = factor_cubic(char_poly(g))
    best = None
    for mults in product(*(range(1, m + 1) for _, m in facs)):
        cand = (Fraction(1),)
        for (f, _), k in zip(facs, mults):
            for _ in range(k):
                cand = poly_mul(cand, f)
        if poly_eval_matrix(cand, g) == ZERO3 and (best is None or len(cand) < len(best)):
            best = cand
    return best


# -- Jordan decomposition -------------------------------------------------------

@dataclass(frozen=True)
class JordanPair:
    semisimple: RationalMatrix3
    unipotent: RationalMatrix3

    def check(self, g: RationalMatrix3) -> dict:
        s, u = self.semisimple, self.unipotent
        n = u - I3
        return {
            "product": s @ u == g,
            "commute": s @ u == u @ s,
            "squarefree": minimal_poly(s) == squarefree_part(minimal_poly(s)),
            "unipotent": n @ n @ n == ZERO3,
        }


def jordan_decompose(g: RationalMatrix3) -> JordanPair:
    """Chevalley: Newton iteration x <- x - p(x) p'(x)^-1 with p the squarefree part of chi."""
    p = squarefree_part(char_poly(g))
    dp = poly_deriv(p)
    x = g
    for _ in range(8):
        px = poly_eval_matrix(p, x)
        if px == ZERO3:
            break
        x = x - px @ poly_eval_matrix(dp, x).inverse()
    else:  # pragma: no cover - nilpotency index is at most 3
        raise ArithmeticError("Jordan iteration did not terminate")
    return JordanPair(x, x.inverse() @ g)


# -- classification -------------------------------------------------------------

class OrbitKind(str, enum.Enum):
    EllipticG = "EllipticG"
    Elliptic21 = "Elliptic21"
    SplitRegular = "SplitRegular"
    TwoEqual = "TwoEqual"
    Central = "Central"


class UnipotentSubtype(str, enum.Enum):
    NONE = "None"
    Tri = "Tri"
    Min = "Min"
    Reg = "Reg"


RAMIFIED_KINDS = frozenset({OrbitKind.TwoEqual, OrbitKind.Central})
# minimal standard parabolic whose Levi meets the orbit
ASSOCIATED_PARABOLIC = {
    OrbitKind.EllipticG: "G",
    OrbitKind.Elliptic21: "P21",
    OrbitKind.SplitRegular: "P0",
    OrbitKind.TwoEqual: "P0",
    OrbitKind.Central: "P0",
}


@dataclass(frozen=True)
class OrbitClass:
    kind: OrbitKind
    eigen_data: tuple  # ((eigenvalue, multiplicity), ...) rational ones only
    unipotent_subtype: UnipotentSubtype
    ramified: bool
    char_poly: tuple

    @property
    def parabolic(self) -> str:
        return ASSOCIATED_PARABOLIC[self.kind]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "eigenvalues": [[str(e), m] for e, m in self.eigen_data],
            "unipotent_subtype": self.unipotent_subtype.value,
            "ramified": self.ramified,
            "char_poly": poly_str(self.char_poly),
            "parabolic": self.parabolic,
        }


def classify(g: RationalMatrix3) -> OrbitClass:
    chi = char_poly(g)
    facs = factor_cubic(chi)
    eig = tuple((-f[1], m) for f, m in facs if len(f) == 2)
    degs = sorted(len(f) - 1 for f, _ in facs)
    sub = UnipotentSubtype.NONE
    if degs == [3]:
        kind = OrbitKind.EllipticG
    elif degs == [1, 2]:
        kind = OrbitKind.Elliptic21
    else:
        mults = sorted(m for _, m in facs)
        if mults == [1, 1, 1]:
            kind = OrbitKind.SplitRegular
        elif mults == [1, 2]:
            kind = OrbitKind.TwoEqual
        else:
            kind = OrbitKind.Central
            z = eig[0][0]
            sub = (UnipotentSubtype.Tri, UnipotentSubtype.Min, UnipotentSubtype.Reg)[
                (g - RationalMatrix3.identity(z)).rank()]
    return OrbitClass(kind, eig, sub, kind in RAMIFIED_KINDS, chi)


def conjugacy_probe(g1: RationalMatrix3, g2: RationalMatrix3, search_bound: int = 2) -> str:
    """Orbit equivalence: semisimple parts conjugate over Q iff equal char polys.

    Complete for GL(3), so "unknown" is never returned.  ``search_bound`` is kept
    for API stability; the bounded conjugator search lives in the test oracles.
    """
    c1, c2 = classify(g1), classify(g2)
    if c1.kind != c2.kind or c1.char_poly != c2.char_poly:
        return "inequivalent"
    return "equivalent"


def random_unimodular(rng, steps: int = 6, bound: int = 2) -> RationalMatrix3:
    """Product of random elementary integer matrices and signed permutations (det = +-1)."""
    m = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(3, size=2, replace=False))
        c = int(rng.integers(-bound, bound + 1))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    perm = [int(x) for x in rng.permutation(3)]
    signs = [int(rng.choice((-1, 1))) for _ in range(3)]
    m = [[signs[r] * x for x in m[perm[r]]] for r in range(3)]
    return RationalMatrix3.from_rows(m)
