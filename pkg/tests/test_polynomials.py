from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commutant_forge.polynomials import (
    Polynomial,
    default_names,
    grlex_key,
    monomials_of_degree,
    parse_polynomial,
)

NAMES = default_names(4)


def P(text):
    return parse_polynomial(text, NAMES)


@st.composite
def polynomials(draw, nvars=4, max_terms=5, max_degree=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_degree)) for _ in range(nvars))
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 9))
        terms[exps] = Fraction(num, den)
    return Polynomial(nvars, terms)


class TestArithmetic:
    def test_additive_inverse(self):
        x1 = P("x1")
        assert (x1 + (-x1)).is_zero

    def test_add_identity(self):
        p = P("x3^2 - x4^2 + x1*x3")
        assert p + Polynomial.zero(4) == p

    def test_product_of_variables(self):
        assert P("x1") * P("x3") == P("x1*x3")
        assert P("x3") * P("x3") == P("x3^2")

    def test_binomial_square(self):
        assert (P("x1") + P("x2")) ** 2 == P("x1^2 + 2*x1*x2 + x2^2")

    def test_degree_additivity(self):
        p, q = P("x1*x2 + x3"), P("x4^3 - 2*x1")
        assert (p * q).degree() == p.degree() + q.degree()

    def test_scalar_multiplication(self):
        assert P("x1") * Fraction(3, 2) == P("3/2*x1")

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            P("x1") + Polynomial.variable(0, 3)
        with pytest.raises(ValueError):
            P("x1") * Polynomial.variable(0, 3)

    @given(polynomials(), polynomials(), polynomials())
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r

    @given(polynomials())
    @settings(max_examples=40, deadline=None)
    def test_no_zero_coefficients_stored(self, p):
        q = (p - p) + p
        assert all(c != 0 for c in q.terms.values())


class TestCalculus:
    def test_derivative(self):
        assert P("x1^2*x2").derivative(0) == P("2*x1*x2")
        assert P("x1^2*x2").derivative(1) == P("x1^2")
        assert P("x3").derivative(0).is_zero

    def test_evaluate(self):
        p = P("x1^2 - x2*x3 + 1/2")
        assert p.evaluate([2, 3, 5, 7]) == Fraction(4) - 15 + Fraction(1, 2)

    def test_substitute(self):
        p = P("x1*x2 + x3^2")
        images = [Polynomial.variable(i % 2, 2) for i in range(4)]
        out = p.substitute(images)
        assert out == parse_polynomial("x1*x2 + x1^2", default_names(2))

    def test_homogeneous_parts(self):
        p = P("x1^2 + x2 + 3")
        comps = p.homogeneous_components()
        assert sorted(comps) == [0, 1, 2]
        assert comps[2] == P("x1^2")
        assert not p.is_homogeneous()


class TestOrderAndFormat:
    def test_grlex_total_order(self):
        mons = monomials_of_degree(3, 2)
        assert mons == sorted(mons, key=grlex_key, reverse=True)
        assert mons[0] == (2, 0, 0)
        assert mons[-1] == (0, 0, 2)

    def test_format_canonical(self):
        p = P("x2 - x1 + x1^2")
        assert p.format(NAMES) == "x1^2 - x1 + x2"

    @given(polynomials())
    @settings(max_examples=60, deadline=None)
    def test_round_trip(self, p):
        assert parse_polynomial(p.format(NAMES), NAMES) == p

    def test_parse_rational_coefficients(self):
        p = P("-3/4*x1*x2^2 + 2")
        assert p.coefficient((1, 2, 0, 0)) == Fraction(-3, 4)
        assert p.coefficient((0, 0, 0, 0)) == 2

    def test_parse_rejects_unknown_symbol(self):
        with pytest.raises(ValueError):
            P("x9 + 1")

    def test_zero_round_trip(self):
        assert parse_polynomial("0", NAMES).is_zero
        assert Polynomial.zero(4).format(NAMES) == "0"
