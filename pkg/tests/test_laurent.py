"""Tests for the exact Laurent coefficient ring."""

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from algebra.laurent import (
    LaurentQ,
    lp_add,
    lp_at_q0,
    lp_is_int_poly,
    lp_is_regular_at_zero,
    lp_mod_q2,
    lp_mul,
    lp_qpow,
    lp_scale,
)

from transcripts import laurent_to_sympy

laurents = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(LaurentQ)


@given(laurents, laurents)
def test_addition_commutes(a, b):
    assert a + b == b + a


@given(laurents, laurents, laurents)
def test_multiplication_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(laurents, laurents, laurents)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(laurents)
def test_additive_inverse(a):
    assert (a - a).is_zero()
    assert a + (-a) == LaurentQ.zero()


@given(laurents, laurents)
def test_product_matches_sympy(a, b):
    assert laurent_to_sympy(a * b) == sp.expand(laurent_to_sympy(a) * laurent_to_sympy(b))


@given(laurents, st.integers(0, 4))
def test_power_matches_repeated_product(a, n):
    expected = LaurentQ.one()
    for _ in range(n):
        expected = expected * a
    assert a ** n == expected


@given(laurents)
def test_json_encoding_is_canonical(a):
    assert LaurentQ.from_json(a.to_json()) == a
    assert all(c != 0 for _, c in a.to_json())


def test_zero_coefficients_are_dropped():
    assert LaurentQ({2: 0, 4: 1}).terms() == [(4, 1)]
    assert LaurentQ({2: 1}) + LaurentQ({2: -1}) == 0


def test_equality_with_integers():
    assert LaurentQ.one() == 1
    assert LaurentQ.constant(-3) == -3
    assert LaurentQ.q(1) != 1


def test_half_integer_exponents_are_exact():
    half = LaurentQ.qpow(1)
    assert half * half == LaurentQ.q(1)
    assert half.has_half_exponents()
    assert not half.is_int_poly()
    assert str(half) == "q^(1/2)"


def test_predicates():
    poly = LaurentQ({0: 1, 2: -1, 4: 3})
    assert lp_is_int_poly(poly)
    assert lp_is_regular_at_zero(poly)
    assert lp_mod_q2(poly) == (1, -1)
    assert lp_at_q0(poly) == 1

    pole = LaurentQ.q(-1) + 1
    assert not lp_is_regular_at_zero(pole)
    assert lp_at_q0(pole) is None
    assert lp_mod_q2(pole) is None


def test_shift_and_scale():
    a = LaurentQ({0: 1, 2: 2})
    assert a.shift(4) == LaurentQ({4: 1, 6: 2})
    assert a.scale(-2) == LaurentQ({0: -2, 2: -4})
    assert a.scale(0).is_zero()


def test_string_form():
    assert str(LaurentQ.zero()) == "0"
    assert str(LaurentQ({4: 1, 0: -1})) == "q^2 - 1"
    assert str(LaurentQ({-2: 2})) == "2*q^-1"


def test_bad_terms_rejected():
    with pytest.raises(TypeError):
        LaurentQ({0.5: 1})
    with pytest.raises(ValueError):
        LaurentQ.from_json([[2, 1], [2, 3]])


@given(laurents, laurents)
def test_function_forms(a, b):
    assert lp_add(a, b) == a + b
    assert lp_mul(a, b) == a * b
    assert lp_scale(a, -3) == a * LaurentQ.constant(-3)
    assert lp_qpow(3) * lp_qpow(-3) == 1
