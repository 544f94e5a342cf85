import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qreg.rings import (BiPoly, ComplexApprox, DegenerateRadicandError, DomainMismatchError,
                        Mat2, QuadExt, UnsupportedOperationError, adjoin_sqrt, field_inv,
                        parse_exact, poly_eval, ring_add, ring_eq, ring_mul, serialize)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
quad2 = st.builds(lambda r, i: QuadExt(2, r, i), rationals, rationals)
X, Y = BiPoly.gens()


def bipolys(max_terms=5):
    terms = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), rationals,
                            max_size=max_terms)
    return terms.map(BiPoly)


def test_quadext_square():
    a = QuadExt(2, 1, 1)
    assert a * a == QuadExt(2, 3, 2)


def test_difference_of_squares():
    assert (X + Y) * (X - Y) == X ** 2 - Y ** 2


def test_bipoly_additive_inverse_is_empty():
    p = (X + Y) + (-X - Y)
    assert p.terms == {}
    assert p == 0


def test_field_inv_examples():
    assert field_inv(QuadExt(2, 0, 1)) == QuadExt(2, 0, Fraction(1, 2))
    assert field_inv(Fraction(3, 4)) == Fraction(4, 3)
    with pytest.raises(ZeroDivisionError):
        field_inv(0)
    with pytest.raises(ZeroDivisionError):
        field_inv(QuadExt(2, 0, 0))
    with pytest.raises(UnsupportedOperationError):
        field_inv(X + 1)


def test_complex_inverse():
    z = ComplexApprox(0.3, -1.7)
    assert (z * field_inv(z)).close(1, 1e-12)
    with pytest.raises(ZeroDivisionError):
        field_inv(ComplexApprox(0.0))


def test_adjoin_sqrt():
    d = adjoin_sqrt(Fraction(4, 9))
    assert d.is_rational and d.root == Fraction(2, 3)
    d = adjoin_sqrt(2)
    assert not d.is_rational
    assert d.root == QuadExt(2, 0, 1)
    d = adjoin_sqrt(Fraction(1, 2))
    assert d.radicand == 2 and d.root == QuadExt(2, 0, Fraction(1, 2))
    assert d.root * d.root == Fraction(1, 2)
    d = adjoin_sqrt(Fraction(5, 4))
    assert d.radicand == 5 and str(d.root) == "1/2*sqrt(5)"
    d = adjoin_sqrt(-12)
    assert d.radicand == -3 and d.root * d.root == -12
    with pytest.raises(DegenerateRadicandError):
        adjoin_sqrt(0)


def _stern_by_recurrence(n):
    s = [0, 1]
    for k in range(2, n + 1):
        s.append(s[k // 2] if k % 2 == 0 else s[k // 2] + s[k // 2 + 1])
    return s[n]


def test_poly_eval_examples():
    p = X + X * Y + Y ** 2
    assert poly_eval(p, 1, 1) == _stern_by_recurrence(5) == 3
    assert poly_eval(BiPoly(), 7, Fraction(1, 3)) == 0
    assert poly_eval(X, QuadExt(2, 0, 1), 0) == QuadExt(2, 0, 1)


def test_domain_mismatch():
    with pytest.raises(DomainMismatchError):
        QuadExt(2, 1, 1) + QuadExt(3, 1, 1)
    with pytest.raises(DomainMismatchError):
        QuadExt(2, 1, 1) * QuadExt(8, 0, 1)
    with pytest.raises(DomainMismatchError):
        ring_eq(QuadExt(2, 1, 0), QuadExt(3, 1, 0))
    u, v = BiPoly.gens(("u", "v"))
    with pytest.raises(DomainMismatchError):
        X + u
    with pytest.raises(DomainMismatchError):
        ring_add(QuadExt(2, 1, 1), X)
    with pytest.raises(DomainMismatchError):
        ring_mul(ComplexApprox(1.0), X)


def test_rationals_mix_with_every_domain():
    assert QuadExt(2, 1, 1) + Fraction(1, 2) == QuadExt(2, Fraction(3, 2), 1)
    assert 3 - QuadExt(2, 1, 1) == QuadExt(2, 2, -1)
    assert 2 * X == X + X
    assert QuadExt(2, 5, 0) == 5


def test_complex_has_no_exact_equality():
    with pytest.raises(TypeError):
        ComplexApprox(1.0) == ComplexApprox(1.0)
    with pytest.raises(ValueError):
        ring_eq(ComplexApprox(1.0), ComplexApprox(1.0))
    assert ring_eq(ComplexApprox(1.0), ComplexApprox(1.0 + 1e-13), tol=1e-12)


def test_laurent_monomial_inverse():
    xi = X.monomial_inverse()
    assert xi * X == 1
    assert str(xi) == "x^-1"
    with pytest.raises(UnsupportedOperationError):
        (X + Y).monomial_inverse()
    with pytest.raises(UnsupportedOperationError):
        Y.monomial_inverse()


@pytest.mark.parametrize("value, text", [
    (Fraction(-3, 4), "-3/4"),
    (7, "7"),
    (QuadExt(2, 0, 3), "3*sqrt(2)"),
    (QuadExt(2, 0, 1), "sqrt(2)"),
    (QuadExt(2, 1, -1), "1-sqrt(2)"),
    (QuadExt(Fraction(1, 2), Fraction(1, 3), Fraction(-2, 5)), "1/3-2/5*sqrt(1/2)"),
    (QuadExt(3, Fraction(1, 2), Fraction(1, 2)), "1/2+1/2*sqrt(3)"),
    (X + X * Y + Y ** 2, "x + x*y + y^2"),
    (Fraction(1, 2) * X ** 2 - 3 * Y + 1, "1 - 3*y + 1/2*x^2"),
    (BiPoly(), "0"),
])
def test_serialization(value, text):
    assert serialize(value) == text


@given(quad2)
def test_parse_roundtrip(a):
    assert parse_exact(serialize(a)) == a


def test_parse_rejects_garbage():
    for bad in ["", "sqrt", "1+", "x", "2*sqrt(0)"]:
        with pytest.raises(ValueError):
            parse_exact(bad)


def test_parse_square_radicand_collapses():
    assert parse_exact("1+sqrt(4)") == 3


@settings(max_examples=1000)
@given(quad2, quad2, quad2)
def test_quadext_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=500)
@given(quad2)
def test_quadext_inverse(a):
    if not a:
        return
    assert a * field_inv(a) == 1


@settings(max_examples=500)
@given(bipolys(), bipolys(), rationals, rationals)
def test_bipoly_eval_homomorphism(p, q, x0, y0):
    assert poly_eval(p * q, x0, y0) == poly_eval(p, x0, y0) * poly_eval(q, x0, y0)
    assert poly_eval(p + q, x0, y0) == poly_eval(p, x0, y0) + poly_eval(q, x0, y0)


@settings(max_examples=100)
@given(st.floats(min_value=0, max_value=1, exclude_max=True))
def test_unit_circle(theta):
    assert abs(abs(ComplexApprox.unit(theta)) - 1) <= 1e-12


@given(st.lists(st.tuples(rationals, rationals, rationals, rationals), min_size=3, max_size=3))
def test_mat2_associative_and_det_multiplicative(entries):
    A, B, C = (Mat2(*e) for e in entries)
    assert (A @ B) @ C == A @ (B @ C)
    assert (A @ B).det() == A.det() * B.det()


def test_mat2_inverse_over_quadext():
    t = QuadExt(2, 0, 1)
    A = Mat2(t, 1, 1 - 2 + 2, t)
    assert A @ A.inverse() == Mat2.identity(t)


def test_quadext_sqrt():
    assert QuadExt(2, 3, 2).sqrt() == QuadExt(2, 1, 1)
    assert QuadExt(2, 8, 0).sqrt() == QuadExt(2, 0, 2)
    assert QuadExt(2, 3, 0).sqrt() is None
    assert math.isclose(float(QuadExt(2, 1, 1)), 1 + math.sqrt(2))
