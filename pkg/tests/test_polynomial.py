import pytest
from hypothesis import given, strategies as st

from vkh.errors import NotDivisible
from vkh.polynomial import LaurentPoly, Poincare2, parse_laurent, parse_poincare

terms = st.dictionaries(st.integers(-12, 12), st.integers(-9, 9), max_size=6)
polys = st.builds(LaurentPoly, terms)


def test_zero_terms_dropped():
    p = LaurentPoly({1: 0, 2: 3})
    assert p.terms == {2: 3} and not LaurentPoly({0: 0})


def test_format_ascending():
    assert str(LaurentPoly({4: 1, -1: 1, 0: -1, 1: 1})) == "q^-1 - 1 + q + q^4"
    assert str(LaurentPoly({-16: -1, -4: 1, -12: 1}, "a")) == "-a^-16 + a^-12 + a^-4"
    assert str(LaurentPoly()) == "0"


def test_int_coercion():
    q = LaurentPoly.monomial(1)
    assert 1 - q == LaurentPoly({0: 1, 1: -1})
    assert q * 3 == LaurentPoly({1: 3})


def test_variables_do_not_mix():
    with pytest.raises(ValueError):
        LaurentPoly({1: 1}) + LaurentPoly({1: 1}, "a")


def test_divide_exact():
    circle = LaurentPoly({-1: 1, 1: 1})
    assert (circle * circle).divide_exact(circle) == circle
    with pytest.raises(NotDivisible):
        LaurentPoly({2: 1, -2: 1}).divide_exact(circle)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly()


@given(polys, polys)
def test_division_inverts_multiplication(a, b):
    if b:
        assert (a * b).divide_exact(b) == a


@given(polys)
def test_parse_round_trip(p):
    assert parse_laurent(str(p)) == p


@given(polys, st.integers(-3, 3))
def test_evaluate_is_a_homomorphism(p, x):
    if x:
        from fractions import Fraction
        assert (p * p).evaluate(Fraction(x)) == p.evaluate(Fraction(x)) ** 2


def test_poincare_format_and_parse():
    p = Poincare2({(0, -1): 1, (0, 1): 1, (2, 5): 1})
    assert str(p) == "q^-1 + q + t^2 q^5"
    assert parse_poincare("P(t,q) = " + str(p)) == p


@given(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-6, 6)), st.integers(0, 4), max_size=6))
def test_poincare_round_trip(d):
    p = Poincare2(d)
    assert parse_poincare(str(p)) == p
    assert p.nonnegative()
