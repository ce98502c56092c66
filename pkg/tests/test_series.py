from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from su3cg.core import Irrep, dimension
from su3cg.series import (
    conjugate_series,
    dimension_check,
    multiplicity,
    series_by_weights,
    series_general,
    series_pp,
    series_pq,
)


def labels(terms):
    return [(t.irrep.P, t.irrep.Q, t.multiplicity) for t in terms]


def test_octet_squared():
    got = labels(series_general(Irrep(1, 1), Irrep(1, 1)))
    assert got == [(2, 2, 1), (3, 0, 1), (0, 3, 1), (1, 1, 2), (0, 0, 1)]


def test_trivial_and_small_products():
    assert labels(series_general(Irrep(1, 0), Irrep(0, 0))) == [(1, 0, 1)]
    assert labels(series_general(Irrep(1, 0), Irrep(0, 1))) == [(1, 1, 1), (0, 0, 1)]
    assert labels(series_pq(1, 1)) == [(1, 1, 1), (0, 0, 1)]
    assert labels(series_pp(1, 1)) == [(2, 0, 1), (0, 1, 1)]


@pytest.mark.parametrize("P1,Q1,P2,Q2", list(product(range(4), repeat=4)))
def test_dimension_sum_rule_and_peeling(P1, Q1, P2, Q2):
    s1, s2 = Irrep(P1, Q1), Irrep(P2, Q2)
    assert dimension_check(s1, s2)
    assert series_general(s1, s2) == series_by_weights(s1, s2)


@pytest.mark.parametrize("P", range(4))
def test_diagonal_multiplicity(P):
    s = Irrep(P, P)
    assert multiplicity(s, s, s) == 1 + P


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_series_symmetries(P1, Q1, P2, Q2):
    s1, s2 = Irrep(P1, Q1), Irrep(P2, Q2)
    terms = series_general(s1, s2)
    assert terms == series_general(s2, s1)
    assert conjugate_series(terms) == series_general(Irrep(Q1, P1), Irrep(Q2, P2))
    assert sum(t.multiplicity * dimension(t.irrep) for t in terms) == dimension(s1) * dimension(s2)


def test_ordering():
    terms = series_general(Irrep(2, 1), Irrep(1, 2))
    keys = [(-(t.irrep.P + t.irrep.Q), -t.irrep.P) for t in terms]
    assert keys == sorted(keys)
