"""Tests for Cartan data, symmetrizers and the g-table."""

import pickle

import numpy as np
import pytest
import sympy as sp

from algebra.cartan import FAMILIES, G_TABLE_DOMAIN, build_cartan, g_from_pairing
from algebra.errors import IndexOutOfRange, InvalidRank, UnsupportedPairing
from algebra.laurent import LaurentQ

from transcripts import laurent_to_sympy, q


@pytest.mark.parametrize("family,rank", [
    ('A', 1), ('A', 4), ('B', 2), ('B', 4), ('C', 2), ('C', 3),
    ('D', 4), ('D', 6), ('E6', None), ('E7', None), ('E8', None), ('F4', None), ('G2', None),
])
def test_pairing_matrix_is_symmetric(family, rank):
    C = build_cartan(family, rank)
    sym = C.pairing_matrix()
    assert np.array_equal(sym, sym.T)
    assert all(C.a[i, i] == 2 for i in range(C.rank))
    assert all(v in G_TABLE_DOMAIN for v in C.pairing_values())


def test_g2_data(G2):
    assert G2.d == (3, 1)
    assert G2.a.tolist() == [[2, -1], [-3, 2]]
    assert G2.pairing_matrix().tolist() == [[6, -3], [-3, 2]]
    assert G2.pairing_values() == [6, 2, -3]


def test_b2_and_c2_symmetrizers():
    B2 = build_cartan('B', 2)
    C2 = build_cartan('C', 2)
    assert B2.d == (2, 1)
    assert B2.pairing_matrix().tolist() == [[4, -2], [-2, 2]]
    assert C2.d == (1, 2)
    assert C2.pairing_matrix().tolist() == [[2, -2], [-2, 4]]


def test_f4_symmetrizer():
    F4 = build_cartan('F4')
    assert F4.d == (2, 2, 1, 1)
    assert F4.pairing_value(2, 3) == -2
    assert F4.pairing_value(3, 4) == -1


def test_d4_branch():
    D4 = build_cartan('D', 4)
    assert D4.pairing_value(2, 4) == -1
    assert D4.pairing_value(2, 3) == -1
    assert D4.pairing_value(3, 4) == 0


def test_e6_branch_node():
    E6 = build_cartan('E6')
    assert E6.rank == 6
    assert E6.pairing_value(2, 4) == -1
    assert E6.pairing_value(1, 3) == -1
    assert E6.pairing_value(1, 2) == 0


def test_a_chain(A2):
    assert A2.pairing_matrix().tolist() == [[2, -1], [-1, 2]]
    assert A2.name == 'A2'
    assert A2.nodes == [1, 2]


@pytest.mark.parametrize("family,rank", [('A', 0), ('D', 3), ('B', 1), ('E6', 7), ('Z', 2)])
def test_invalid_ranks(family, rank):
    with pytest.raises(InvalidRank):
        build_cartan(family, rank)


def test_node_outside_range(A2):
    with pytest.raises(IndexOutOfRange):
        A2.pairing_value(1, 3)
    with pytest.raises(IndexOutOfRange):
        A2.check_node(0)


@pytest.mark.parametrize("p,r,terms", [
    (2, 0, {4: 1}),
    (2, 1, {8: 1, 0: -1}),
    (2, 2, {12: 1, 4: -1}),
    (0, 0, {0: 1}),
    (0, 2, {}),
    (-1, 0, {-2: 1}),
    (-1, 2, {-6: 1, -2: -1}),
    (-3, 1, {-12: 1, 0: -1}),
    (4, 1, {16: 1, 0: -1}),
    (-2, 3, {-16: 1, -8: -1}),
    (6, 3, {48: 1, 24: -1}),
])
def test_g_table_entries(p, r, terms):
    assert g_from_pairing(p, r) == LaurentQ(terms)


@pytest.mark.parametrize("p", G_TABLE_DOMAIN)
@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_g_table_against_sympy(p, r):
    expected = q ** p if r == 0 else q ** (p * (r + 1)) - q ** (p * (r - 1))
    assert laurent_to_sympy(g_from_pairing(p, r)) == sp.expand(expected)


def test_g_table_domain():
    with pytest.raises(UnsupportedPairing):
        g_from_pairing(3, 0)
    with pytest.raises(ValueError):
        g_from_pairing(2, -1)


def test_g_qinv_uses_pairing(A2):
    assert A2.g_qinv(1, 2, 0) == LaurentQ.q(-1)
    assert A2.g_qinv(1, 1, 1) == LaurentQ({8: 1, 0: -1})


def test_pickle_round_trip(G2):
    restored = pickle.loads(pickle.dumps(G2))
    assert restored == G2
    assert hash(restored) == hash(G2)


def test_matrix_is_read_only(A2):
    with pytest.raises(ValueError):
        A2.a[0, 0] = 5


def test_describe_payload(A2):
    data = A2.to_dict()
    assert data['d'] == [1, 1]
    assert data['labeling'].startswith('1 - 2')
    assert set(FAMILIES) >= {'A', 'G2'}
