from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gl3trace import orbits as O
from gl3trace.orbits import OrbitKind, RationalMatrix3 as M, UnipotentSubtype
from gl3trace.suite import orbit_corpus


def _sym(g):
    return sympy.Matrix(3, 3, [sympy.Rational(c.numerator, c.denominator) for c in g.entries])


def _oracle_kind(g):
    """Eigenstructure from sympy's factorisation over Q."""
    x = sympy.symbols("x")
    _, facs = sympy.factor_list(_sym(g).charpoly(x).as_expr(), x)
    degs = sorted(sympy.degree(f, x) for f, _ in facs)
    if degs == [3]:
        return OrbitKind.EllipticG
    if degs == [1, 2]:
        return OrbitKind.Elliptic21
    mults = sorted(m for _, m in facs)
    return {(1, 1, 1): OrbitKind.SplitRegular, (1, 2): OrbitKind.TwoEqual, (3,): OrbitKind.Central}[tuple(mults)]


def _conjugator(g1, g2, bound=2):
    """Bounded integer search over the solution space of X g1 = g2 X for an invertible X."""
    A, B = _sym(g1), _sym(g2)
    xs = sympy.symbols("x0:9")
    X = sympy.Matrix(3, 3, xs)
    eqs = list(X * A - B * X)
    sol = sympy.linsolve(eqs, xs)
    (gen,) = sol
    free = sorted(set().union(*(sympy.sympify(e).free_symbols for e in gen)), key=str)
    for vals in product(range(-bound, bound + 1), repeat=len(free)):
        Xv = sympy.Matrix(3, 3, [sympy.sympify(e).subs(dict(zip(free, vals))) for e in gen])
        if Xv.det() != 0:
            return Xv
    return None


def test_parse_and_arithmetic():
    g = M.parse("1/2,0,0, 0,2,0, 0,0,3")
    assert g.det() == 3 and g.trace() == Fraction(11, 2)
    assert g @ g.inverse() == O.I3
    assert M.parse(",".join(g.to_strings())) == g
    with pytest.raises(ValueError):
        M.parse("1,2,3")
    with pytest.raises(O.SingularMatrixError):
        M.parse("1,2,3,2,4,6,0,0,1").inverse()


def test_char_poly_examples():
    assert O.char_poly(M.diag(1, 2, 3)) == (1, -6, 11, -6)
    assert O.char_poly(M.companion((0, 0, -2))) == (1, 0, 0, -2)
    assert O.char_poly(O.I3) == (1, -3, 3, -1)
    with pytest.raises(O.SingularMatrixError):
        O.char_poly(O.ZERO3)


def test_factor_cubic_examples():
    assert O.factor_cubic((1, 0, 0, -2)) == [((1, 0, 0, -2), 1)]
    # (x - 2)(x^2 + 1) = x^3 - 2x^2 + x - 2
    assert O.factor_cubic((1, -2, 1, -2)) == [((1, -2), 1), ((1, 0, 1), 1)]
    # (x - 1)^2 (x - 5) = x^3 - 7x^2 + 11x - 5
    assert O.factor_cubic((1, -7, 11, -5)) == [((1, -1), 2), ((1, -5), 1)]


def test_jordan_examples():
    jp = O.jordan_decompose(M.diag(1, 2, 3))
    assert jp.semisimple == M.diag(1, 2, 3) and jp.unipotent == O.I3
    jp = O.jordan_decompose(M.unipotent(0, 1, 0, 2))
    assert jp.semisimple == M.identity(2) and jp.unipotent == M.unipotent(0, 1, 0)
    g = M.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    jp = O.jordan_decompose(g)
    assert jp.semisimple == M.diag(1, 1, 2)
    assert jp.unipotent == M.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert all(jp.check(g).values())


def test_classify_examples():
    c = O.classify(M.companion((0, 0, -2)))
    assert c.kind is OrbitKind.EllipticG and not c.ramified and c.parabolic == "G"
    c = O.classify(M.from_rows([[0, -1, 0], [1, 0, 0], [0, 0, 2]]))
    assert c.kind is OrbitKind.Elliptic21 and not c.ramified
    c = O.classify(M.unipotent(1, 0, 1, 3))
    assert c.kind is OrbitKind.Central and c.unipotent_subtype is UnipotentSubtype.Reg and c.ramified
    d = O.classify(M.diag(1, 2, 3)).to_dict()
    assert d["kind"] == "SplitRegular" and d["ramified"] is False


def test_probe_examples():
    assert O.conjugacy_probe(M.diag(1, 2, 3), M.diag(2, 1, 3)) == "equivalent"
    g = M.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    assert O.conjugacy_probe(M.diag(1, 1, 2), g) == "equivalent"
    assert O.conjugacy_probe(M.companion((0, 0, -2)), M.companion((0, 0, -3))) == "inequivalent"


def test_corpus_matches_sympy_oracle():
    for g, kind, eig, sub in orbit_corpus(0):
        assert _oracle_kind(g) is kind
        assert O.classify(g).kind is kind


def test_corpus_subtypes_from_rank():
    for g, kind, eig, sub in orbit_corpus(1):
        if kind is OrbitKind.Central:
            z = eig[0][0]
            r = (_sym(g) - sympy.Rational(z.numerator, z.denominator) * sympy.eye(3)).rank()
            assert ["Tri", "Min", "Reg"][r] == sub.value == O.classify(g).unipotent_subtype.value


@pytest.mark.parametrize("g1,g2", [
    (M.diag(1, 2, 3), M.diag(3, 1, 2)),
    (M.diag(1, 1, 2), M.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 2]])),
    (M.from_rows([[0, -1, 0], [1, 0, 0], [0, 0, 2]]), M.from_rows([[2, 0, 0], [0, 1, -2], [0, 1, -1]])),
    (M.diag(1, 2, 3), M.diag(1, 2, 4)),
    (M.companion((0, 0, -2)), M.companion((0, 0, -3))),
])
def test_probe_against_conjugator_search(g1, g2):
    # orbits are equal iff the semisimple parts are conjugate
    s1 = O.jordan_decompose(g1).semisimple
    s2 = O.jordan_decompose(g2).semisimple
    found = _conjugator(s1, s2) is not None
    assert (O.conjugacy_probe(g1, g2) == "equivalent") == found


small = st.integers(-3, 3)


@settings(max_examples=150, deadline=None)
@given(st.lists(small, min_size=9, max_size=9), st.integers(0, 2 ** 32 - 1))
def test_conjugation_invariance(entries, seed):
    g = M(tuple(Fraction(x) for x in entries))
    if g.det() == 0:
        return
    u = O.random_unimodular(np.random.default_rng(seed))
    h = u @ g @ u.inverse()
    assert O.classify(h) == O.classify(g)
    for x in (g, h):
        assert all(O.jordan_decompose(x).check(x).values())


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=3, max_size=3), st.sampled_from([1, -1, 2, Fraction(1, 3)]))
def test_subtype_invariant_under_scaling(n, z):
    g = M.unipotent(*n)
    a = O.classify(g)
    b = O.classify(g.scale(z))
    assert a.unipotent_subtype == b.unipotent_subtype
    assert b.eigen_data == ((Fraction(z), 3),)


def test_random_unimodular_has_unit_det():
    rng = np.random.default_rng(4)
    for _ in range(50):
        assert abs(O.random_unimodular(rng).det()) == 1


def test_minimal_poly():
    assert O.minimal_poly(M.diag(1, 1, 2)) == (1, -3, 2)
    assert O.minimal_poly(M.unipotent(1, 0, 1)) == (1, -3, 3, -1)
