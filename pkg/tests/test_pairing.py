"""Tests for the bilinear form, Gram matrices and the Gram verification window."""

import numpy as np
import pytest

from algebra.errors import NotOrderedInput
from algebra.laurent import LaurentQ
from algebra.words import Element, make_word
from evaluation.batch import Window
from evaluation.pairing import (
    check_window,
    constant_terms,
    gram,
    length_two_closed_form,
    pair,
    pair_word_with_diagnostics,
    summarize_diagnostics,
)
from operators.omega import OmegaOperator

from transcripts import laurent_to_sympy, pair_a1, q

A1_LENGTH_TWO = [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]


def e(*pairs):
    return Element.from_word(make_word(pairs))


def test_regression_value(A1):
    value = pair(A1, e((1, 0), (1, 0)), e((1, 0), (1, 0)))
    assert value == LaurentQ({0: 1, 4: 1})
    assert laurent_to_sympy(value) == pair_a1((0, 0), (0, 0))


@pytest.mark.parametrize("u", A1_LENGTH_TWO)
@pytest.mark.parametrize("v", A1_LENGTH_TWO)
def test_a1_length_two_formula(A1, u, v):
    (a, b), (c, d) = u, v
    value = pair(A1, e((1, a), (1, b)), e((1, c), (1, d)))
    expected = int(a == c and b == d) + q ** 2 * int(a == d and b == c)
    assert laurent_to_sympy(value) == expected
    assert laurent_to_sympy(value) == pair_a1(u, v)


def test_unit_pairing(A1):
    assert pair(A1, Element.unit(), Element.unit()) == 1
    assert pair(A1, Element.unit(), e((1, 0))) == 0
    assert pair(A1, e((1, 2)), e((1, 2))) == 1
    assert pair(A1, e((1, 2)), e((1, 1))) == 0


def test_longer_left_vanishes(A2):
    assert pair(A2, e((1, 0), (1, 0)), e((1, 0))).is_zero()
    assert pair(A2, e((2, 1), (1, 0)), e((2, 1))).is_zero()


def test_bilinear_in_the_left_argument(A1):
    u = Element.from_terms([(make_word([(1, 0), (1, 0)]), LaurentQ.q(1)),
                            (make_word([(1, 1), (1, 0)]), 2)])
    v = e((1, 0), (1, 0))
    assert pair(A1, u, v) == LaurentQ.q(1) * LaurentQ({0: 1, 4: 1})


def test_unordered_arguments_rejected(A1):
    with pytest.raises(NotOrderedInput):
        pair(A1, e((1, 0), (1, 1)), Element.unit())
    with pytest.raises(NotOrderedInput):
        gram(A1, [make_word([(1, 0), (1, 1)])])


@pytest.mark.parametrize("u", A1_LENGTH_TWO)
@pytest.mark.parametrize("v", A1_LENGTH_TWO)
def test_closed_form_agrees_on_a1(A1, u, v):
    uw = make_word([(1, u[0]), (1, u[1])])
    vw = make_word([(1, v[0]), (1, v[1])])
    assert length_two_closed_form(A1, uw, vw) == pair(A1, Element.from_word(uw), Element.from_word(vw))


def test_closed_form_needs_length_two(A1):
    with pytest.raises(ValueError):
        length_two_closed_form(A1, make_word([(1, 0)]), make_word([(1, 0), (1, 0)]))


def test_constant_terms():
    matrix = [[LaurentQ.one(), LaurentQ.q(-1)], [LaurentQ.q(2), LaurentQ({0: 3, 2: 1})]]
    c0 = constant_terms(matrix)
    assert c0[0, 0] == 1
    assert np.isnan(c0[0, 1])
    assert c0[1, 0] == 0
    assert c0[1, 1] == 3


def test_gram_window_a1(A1):
    report = check_window(A1, Window(2, 0, 1))
    assert len(report.rows) == 36
    assert report.summary['failed'] == 0
    assert report.summary['engine_errors'] == 0
    assert report.summary['vanishing']['checked'] > 0
    assert report.summary['congruence']['checked'] > 0
    assert report.summary['closed_form']['checked'] == 9
    keys = [r['key'] for r in report.rows]
    assert keys == sorted(keys)


def test_gram_rows_carry_reductions(A1):
    report = check_window(A1, Window(2, 0, 1))
    row = next(r for r in report.rows if r['key'] == 'x[1,0] x[1,0] | x[1,0] x[1,0]')
    assert row['value_text'] == 'q^2 + 1'
    assert (row['c0'], row['c1']) == (1, 0)
    assert row['verdicts']['closed_form'] is True


def test_gram_window_a1_length_three(A1):
    report = check_window(A1, Window(3, -2, 2))
    assert len(report.rows) == 56 * 56
    assert report.summary['failed'] == 0
    assert report.summary['engine_errors'] == 0
    assert report.summary['no_case'] == 0


def test_gram_window_a2(A2):
    report = check_window(A2, Window(2, -1, 1))
    assert report.summary['failed'] == 0
    assert report.summary['engine_errors'] == 0
    assert 'rows_with_residuals' in report.summary


def test_pairing_reports_no_case_inside_the_recursion(A2):
    op = OmegaOperator(A2)
    v = Element.from_word(make_word([(1, 1), (2, 0), (1, 0)]))
    value, diag = pair_word_with_diagnostics(op, make_word([(1, -1)]), v)
    assert value == 0
    assert diag.to_dict()['no_case'] == ['x[1,1] * x[2,1]']


def test_summarize_diagnostics_counts_distinct_pairs():
    rows = [
        {'key': 'a', 'no_case': ['x[1,0] * x[2,0]'], 'residual_pairs': ['x[1,0] * x[2,0]']},
        {'key': 'b', 'no_case': ['x[1,0] * x[2,0]', 'x[1,1] * x[2,1]'], 'residual_pairs': []},
        {'key': 'c'},
    ]
    summary = summarize_diagnostics(rows)
    assert summary['no_case'] == 2
    assert summary['rows_with_no_case'] == 2
    assert summary['residual_pairs'] == 1
    assert summary['rows_with_residuals'] == 1
    assert summary['no_case_examples'] == ['x[1,0] * x[2,0]', 'x[1,1] * x[2,1]']
