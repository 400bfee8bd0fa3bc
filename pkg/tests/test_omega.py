"""Tests for the annihilation operators and their p-exponents."""

import pytest
from hypothesis import given, settings, strategies as st

from algebra.cartan import build_cartan
from algebra.errors import IndexOutOfRange, NotOrderedInput
from algebra.laurent import LaurentQ
from algebra.words import Element, Generator, enumerate_ordered, make_word
from operators.omega import (
    OmegaOperator,
    OmegaVariant,
    min_struct_support,
    omega,
    omega_support,
    p_exponent,
)

from transcripts import element_to_dict, omega_a1, q

x = Generator


def word(*pairs):
    return make_word(pairs)


@pytest.mark.parametrize("m,degrees,expected", [
    (0, (1, 0), {(1,): q ** 2}),
    (-1, (1, 0), {(0,): 1}),
    (0, (0, 0), {(0,): 1 + q ** 2}),
    (0, (1, 1), {(2,): q ** 4 - 1}),
    (1, (2, 0), {(3,): q ** 4 - 1}),
    (0, (2, 0), {(2,): q ** 2}),
    (-2, (2, 0), {(0,): 1}),
    (1, (1, 0), {(2,): q ** 4 - 1}),
    (-2, (1, 0), {}),
])
def test_a1_regressions(A1, m, degrees, expected):
    w = tuple(x(1, k) for k in degrees)
    out = omega(OmegaVariant.TWISTED, A1, 1, m, Element.from_word(w))
    assert element_to_dict(out) == expected
    assert omega_a1(m, degrees) == expected


def test_unit_is_annihilated(A1):
    op = OmegaOperator(A1)
    for m in range(-2, 3):
        assert op.omega(1, m, Element.unit()).is_zero()


def test_length_one_is_a_delta(A2):
    op = OmegaOperator(A2)
    assert op.omega(1, -3, Element.from_word(word((1, 3)))) == Element.unit()
    assert op.omega(1, 3, Element.from_word(word((1, 3)))).is_zero()
    assert op.omega(2, -3, Element.from_word(word((1, 3)))).is_zero()


def test_classic_equals_twisted_on_a1(A1):
    twisted = OmegaOperator(A1, OmegaVariant.TWISTED)
    classic = OmegaOperator(A1, OmegaVariant.CLASSIC)
    for w in [word((1, 1), (1, 0)), word((1, 0), (1, 0)), word((1, 2), (1, 1), (1, 0))]:
        for m in range(-3, 2):
            assert twisted.omega_word(1, m, w) == classic.omega_word(1, m, w)


def test_p_exponent(A2):
    assert p_exponent(A2, 1, 2, 0, word((1, 0))) == 2
    assert p_exponent(A2, 1, 1, 0, word((1, 0))) == 0
    assert p_exponent(A2, 1, 2, 0, ()) == 1


def test_p_exponent_zero_pairing():
    from algebra.cartan import build_cartan
    A3 = build_cartan('A', 3)
    assert p_exponent(A3, 1, 3, 0, word((1, 0))) == 2


def test_struct_support(A2):
    assert min_struct_support(A2, 1, ()) is None
    assert min_struct_support(A2, 1, word((2, 0))) is None
    assert min_struct_support(A2, 1, word((1, 2), (2, 0), (1, -1))) == -2


def test_annihilation_below_support(A2):
    op = OmegaOperator(A2)
    w = word((2, 1), (1, 1), (1, 0))
    s = min_struct_support(A2, 1, w)
    for m in range(s - 3, s):
        assert op.omega_word(1, m, w).is_zero()


def test_inflated_cutoffs_change_nothing(A2):
    base = OmegaOperator(A2)
    wide = OmegaOperator(A2, cutoff_slack=5, search_slack=5)
    for w in [word((2, 1), (1, 0)), word((1, 1), (2, 0)), word((2, 1), (1, 1), (1, 0))]:
        for i in (1, 2):
            for m in range(-2, 2):
                assert base.omega_word(i, m, w) == wide.omega_word(i, m, w)


def test_outputs_are_one_letter_shorter(A2):
    op = OmegaOperator(A2)
    w = word((2, 1), (1, 1), (1, 0))
    for i in (1, 2):
        for m in range(-2, 2):
            out = op.omega_word(i, m, w)
            assert all(len(u) == 2 for u in out.support())


def test_support_window(A1):
    assert omega_support(OmegaVariant.TWISTED, A1, 1, word((1, 1), (1, 0)), (-3, 3)) == {-1, 0, 1, 2, 3}


def test_rejects_unordered_and_bad_node(A1):
    op = OmegaOperator(A1)
    with pytest.raises(NotOrderedInput):
        op.omega(1, 0, Element.from_word(word((1, 0), (1, 1))))
    with pytest.raises(IndexOutOfRange):
        op.omega(2, 0, Element.unit())


def test_trace_shape(A1):
    op = OmegaOperator(A1)
    tree = op.trace(1, 0, word((1, 1), (1, 0)))
    assert tree['word'] == 'x[1,1] x[1,0]'
    assert tree['delta'] is False
    assert tree['support_bound'] == 0
    assert [t['r'] for t in tree['terms']] == [0]
    assert tree['terms'][0]['inner']['result'] == Element.unit().to_json()
    assert tree['p'] == 0
    assert tree['result'] == Element.from_word(word((1, 1)), LaurentQ.q(2)).to_json()


def test_variant_parsing():
    assert OmegaVariant.parse(' Classic ') is OmegaVariant.CLASSIC
    with pytest.raises(ValueError):
        OmegaVariant.parse('other')


A2_WORDS = [w for w in enumerate_ordered(build_cartan('A', 2), 3, -1, 1) if w]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(A2_WORDS), st.sampled_from([1, 2]), st.integers(-2, 2))
def test_memoize_off_gives_the_same_values(w, i, m):
    C = build_cartan('A', 2)
    cached = OmegaOperator(C)
    fresh = OmegaOperator(C, memoize=False)
    assert fresh.omega_word(i, m, w) == cached.omega_word(i, m, w)
    assert fresh.word_diagnostics(i, m, w) == cached.word_diagnostics(i, m, w)
    for i1 in (1, 2):
        assert fresh.p_exponent(i, i1, m, w[1:]) == cached.p_exponent(i, i1, m, w[1:])
    assert not fresh._words
    assert not fresh._p


def test_word_diagnostics_do_not_depend_on_warm_caches(A2):
    w = word((1, 1), (2, 0), (1, 0))
    op = OmegaOperator(A2)
    diag = op.word_diagnostics(1, 1, w)
    assert (x(1, 1), x(2, 1)) in diag.no_case
    assert (x(1, 1), x(2, 1)) in diag.residual_pairs
    # the star product is cached now; a second operator must still see it
    warm = OmegaOperator(A2, star=op.star)
    assert warm.word_diagnostics(1, 1, w) == diag
    assert op.diagnostics(1, 1, Element.from_word(w)) == diag


def test_clean_words_have_no_diagnostics(A1):
    op = OmegaOperator(A1)
    assert op.word_diagnostics(1, 0, word((1, 1), (1, 0))).is_clean()
