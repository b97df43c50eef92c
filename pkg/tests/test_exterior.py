# tests/test_exterior.py
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieon.errors import DimensionMismatch, GradeError, IndexOutOfRange
from lieon.exterior import (MultiVector, Polynomial, d_dx, d_dxi, mv_rank,
                            scalar, schouten, wedge, x, xi)


@st.composite
def affine_multivectors(draw, dim, grade):
    keys = list(combinations(range(1, dim + 1), grade))
    chosen = draw(st.lists(st.sampled_from(keys), max_size=3, unique=True))
    terms = {}
    for key in chosen:
        linear = {i: draw(st.integers(-2, 2))
                  for i in draw(st.lists(st.integers(1, dim), max_size=2, unique=True))}
        terms[key] = Polynomial.affine(draw(st.integers(-2, 2)), linear)
    return MultiVector(dim, grade, terms)


def _draw_triple(data):
    dim = data.draw(st.integers(1, 5))
    return [data.draw(affine_multivectors(dim, data.draw(st.integers(0, min(dim, 3)))))
            for _ in range(3)]


def _heisenberg():
    return MultiVector(3, 2, {(1, 2): Polynomial.var(3)})


def test_polynomial_arithmetic():
    # Test sums, products and derivatives of sparse polynomials
    p = Polynomial.affine(1, {1: 2})
    q = Polynomial.var(2, 3)
    assert (p * q).degree == 2
    assert (p * q).derivative(1) == Polynomial.var(2, 6)
    assert p - p == Polynomial()
    assert p.constant == 1 and p.linear == {1: 2}
    assert p.is_affine and not (p * p).is_affine


def test_wedge_anticommutes_on_vectors():
    # Test xi1 ^ xi2 = -(xi2 ^ xi1) and xi1 ^ xi1 = 0
    a, b = xi(1, 3), xi(2, 3)
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero
    assert wedge(a, b).coefficient((1, 2)) == Polynomial.const(1)


def test_from_terms_sorts_with_sign():
    # Test out-of-order monomials pick up the permutation sign
    P = MultiVector.from_terms(3, 2, [((2, 1), 1)])
    assert P.coefficient((1, 2)) == Polynomial.const(-1)


def test_multivector_rejects_bad_monomials():
    # Test validation of monomial order, grade and range
    with pytest.raises(GradeError):
        MultiVector(3, 2, {(2, 1): 1})
    with pytest.raises(GradeError):
        MultiVector(3, 2, {(1,): 1})
    with pytest.raises(IndexOutOfRange):
        MultiVector(2, 1, {(3,): 1})
    with pytest.raises(IndexOutOfRange):
        MultiVector(2, 1, {(1,): Polynomial.var(5)})


def test_addition_of_different_grades_fails():
    # Test adding a vector to a bivector
    with pytest.raises(GradeError):
        xi(1, 3) + wedge(xi(1, 3), xi(2, 3))


def test_dimension_mismatch():
    # Test operands on different dimensions
    with pytest.raises(DimensionMismatch):
        wedge(xi(1, 2), xi(1, 3))


def test_odd_derivative_signs():
    # Test the left derivative by xi
    P = wedge(xi(1, 3), xi(2, 3))
    assert d_dxi(P, 1) == xi(2, 3)
    assert d_dxi(P, 2) == -xi(1, 3)
    assert d_dxi(P, 3).is_zero


def test_even_derivative():
    # Test d/dx3 of x3 xi1 xi2
    assert d_dx(_heisenberg(), 3) == wedge(xi(1, 3), xi(2, 3))


def test_schouten_bivector_function():
    # Test [x3 xi1 xi2, x1] = -x3 xi2
    result = schouten(_heisenberg(), x(1, 3))
    assert result == MultiVector(3, 1, {(2,): Polynomial.var(3, -1)})


def test_schouten_of_constants_vanishes():
    # Test constant multivectors commute
    assert schouten(xi(1, 3), wedge(xi(2, 3), xi(3, 3))).is_zero
    assert schouten(scalar(2, 3), scalar(5, 3)).is_zero


def test_heisenberg_is_poisson():
    # Test [P, P] = 0 for the Heisenberg bivector
    assert schouten(_heisenberg(), _heisenberg()).is_zero


def test_mv_rank():
    # Test ranks of small bivectors
    assert mv_rank(_heisenberg()) == 2
    P = MultiVector(5, 2, {(1, 2): Polynomial.var(5), (3, 4): Polynomial.var(5)})
    assert mv_rank(P) == 4
    assert mv_rank(MultiVector(3, 2)) == 0
    with pytest.raises(GradeError):
        mv_rank(xi(1, 3))


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_schouten_graded_antisymmetry(data):
    # Test [P, Q] = -(-1)^((p-1)(q-1)) [Q, P]
    P, Q, _ = _draw_triple(data)
    sign = -1 if ((P.grade - 1) * (Q.grade - 1)) % 2 else 1
    assert schouten(P, Q) == schouten(Q, P).scale(-sign)


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_schouten_graded_jacobi(data):
    # Test the graded Jacobi identity on affine multivectors
    P, Q, R = _draw_triple(data)
    p, q, r = P.grade - 1, Q.grade - 1, R.grade - 1
    total = (schouten(P, schouten(Q, R)).scale((-1) ** ((p * r) % 2))
             + schouten(Q, schouten(R, P)).scale((-1) ** ((q * p) % 2))
             + schouten(R, schouten(P, Q)).scale((-1) ** ((r * q) % 2)))
    assert total.is_zero


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_schouten_biderivation(data):
    # Test [P, Q ^ R] = [P, Q] ^ R + (-1)^((p-1)q) Q ^ [P, R]
    P, Q, R = _draw_triple(data)
    sign = -1 if ((P.grade - 1) * Q.grade) % 2 else 1
    expected = wedge(schouten(P, Q), R) + wedge(Q, schouten(P, R)).scale(sign)
    assert schouten(P, wedge(Q, R)) == expected


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_wedge_associative(data):
    # Test (P ^ Q) ^ R = P ^ (Q ^ R)
    P, Q, R = _draw_triple(data)
    assert wedge(wedge(P, Q), R) == wedge(P, wedge(Q, R))


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_wedge_graded_commutative(data):
    # Test P ^ Q = (-1)^(pq) Q ^ P for all grades
    P, Q, _ = _draw_triple(data)
    sign = -1 if (P.grade * Q.grade) % 2 else 1
    assert wedge(P, Q) == wedge(Q, P).scale(sign)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_mv_rank_even_and_bounded(data):
    # Test the rank of a bivector is even and at most dim
    dim = data.draw(st.integers(2, 5))
    P = data.draw(affine_multivectors(dim, 2))
    rank = mv_rank(P)
    assert rank % 2 == 0
    assert 0 <= rank <= dim
    assert (rank == 0) == P.is_zero
