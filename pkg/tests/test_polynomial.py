from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from schurwalk.gamma import GammaPoly, QuotientPoly, p, q
from schurwalk.linalg import SingularMatrixError, identity, inverse, matmul, solve, transpose

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=6)
exponents = st.lists(st.integers(0, 3), min_size=0, max_size=3).map(tuple)


@st.composite
def gamma_polys(draw):
    terms = draw(st.dictionaries(exponents, coeffs, max_size=5))
    return GammaPoly(terms)


points = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=3, max_size=3)


def at(f, xs):
    return f.evaluate_at(lambda k: xs[k - 1])


@given(gamma_polys(), gamma_polys(), gamma_polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == GammaPoly.zero()
    assert a * 1 == a and a + 0 == a


@given(gamma_polys(), gamma_polys(), points)
def test_evaluation_is_a_ring_homomorphism(a, b, xs):
    assert at(a + b, xs) == at(a, xs) + at(b, xs)
    assert at(a * b, xs) == at(a, xs) * at(b, xs)


@given(gamma_polys(), st.integers(0, 3))
def test_power(a, n):
    expected = GammaPoly.one()
    for _ in range(n):
        expected = expected * a
    assert a**n == expected


@given(gamma_polys(), gamma_polys())
def test_derivative_rules(a, b):
    for k in (1, 2, 3):
        assert (a * b).diff(k) == a.diff(k) * b + a * b.diff(k)
        assert (a + b).diff(k) == a.diff(k) + b.diff(k)


@given(gamma_polys(), gamma_polys())
def test_degree_is_additive(a, b):
    if a and b:
        assert (a * b).degree == a.degree + b.degree
    assert (a + b).degree <= max(a.degree, b.degree)


@given(gamma_polys())
def test_matches_sympy_expansion(a):
    syms = sympy.symbols("p1 p3 p5")
    expr = sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**r for s, r in zip(syms, e)]) for e, c in a.items()),
        sympy.Integer(0),
    )
    square = sympy.Poly(sympy.expand(expr**2), *syms)
    got = a * a
    for monom, c in square.terms():
        key = next(iter(GammaPoly.monomial(monom).terms))
        assert got.terms.get(key, 0) == Fraction(int(c.p), int(c.q))
    assert len(got.terms) == len(square.terms()) or not a


def test_weighted_degree_and_printing():
    f = p(3) * Fraction(2, 3) + p(1, 3) * Fraction(4, 3)
    assert f.degree == 3
    assert str(f) == "2/3*p3 + 4/3*p1^3"
    assert str(p(1) * p(3) - 2) == "p1*p3 - 2"
    assert GammaPoly.zero().degree == float("-inf")
    assert str(q(2) * 3 - 1) == "3*q2 - 1"
    assert QuotientPoly.gen(1).degree == 3


def test_monomials_up_to_counts_odd_partitions():
    # monomials of weighted degree d in p1, p3, ... correspond to partitions of d into odd parts
    counts = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]
    mons = GammaPoly.monomials_up_to(10)
    for d, c in enumerate(counts):
        assert sum(1 for e in mons if GammaPoly.exps_degree(e) == d) == c


def test_homogeneous_parts():
    f = p(1, 2) * 2 - p(1) * 2 + 5
    assert f.top() == p(1, 2) * 2
    assert f.homogeneous(1) == p(1) * -2
    assert f.constant_term() == 5
    assert f.truncate_below(1) == p(1, 2) * 2 - p(1) * 2


def test_substitute():
    f = p(1, 2) + p(3)
    g = f.substitute({1: p(1) + 1, 2: p(1)}, GammaPoly)
    assert g == (p(1) + 1) ** 2 + p(1)


def test_json_round_trip_shape():
    data = (p(3) * Fraction(2, 3)).to_json()
    assert data == [{"exponents": {"3": 1}, "coeff": "2/3"}]


@st.composite
def invertible(draw):
    n = draw(st.integers(1, 5))
    rows = draw(
        st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
    )
    if sympy.Matrix(rows).det() == 0:
        rows = [[r[j] + (7 if i == j else 0) * 13 for j in range(n)] for i, r in enumerate(rows)]
    return rows


@given(invertible())
def test_inverse_against_sympy(rows):
    m = sympy.Matrix(rows)
    if m.det() == 0:
        with pytest.raises(SingularMatrixError):
            inverse(rows)
        return
    inv = inverse(rows)
    expected = m.inv()
    assert [[Fraction(int(x.p), int(x.q)) for x in expected.row(i)] for i in range(m.rows)] == inv
    assert matmul(rows, inv) == identity(len(rows))


def test_singular_and_solve():
    with pytest.raises(SingularMatrixError):
        inverse([[1, 2], [2, 4]])
    assert solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert transpose([[1, 2, 3]]) == [[1], [2], [3]]
