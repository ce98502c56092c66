from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from su3cg.core import (
    Irrep,
    casimir_f,
    casimir_g,
    conjugate,
    corners,
    dimension,
    enumerate_basis,
    highest_weight,
    i_range,
    in_diagram,
    irrep,
    parse_rational,
    top_point,
    triality,
    weight_multiplicity,
)

labels = st.integers(0, 6)


def test_dimension_examples():
    assert dimension(Irrep(0, 0)) == 1
    assert dimension(Irrep(1, 0)) == 3
    assert dimension(Irrep(1, 1)) == 8
    assert dimension(Irrep(2, 2)) == 27


def test_casimir_examples():
    assert casimir_f(Irrep(0, 0)) == 0 and casimir_g(Irrep(0, 0)) == 0
    assert casimir_f(Irrep(1, 1)) == 3
    assert casimir_f(Irrep(1, 0)) == F(4, 3)
    assert casimir_g(Irrep(1, 0)) == F(20, 9)


@given(labels)
def test_cubic_casimir_vanishes_on_diagonal(p):
    assert casimir_g(Irrep(p, p)) == 0


@given(labels, labels)
def test_conjugate_flips_cubic(p, q):
    s = Irrep(p, q)
    assert casimir_g(conjugate(s)) == -casimir_g(s)
    assert casimir_f(conjugate(s)) == casimir_f(s)
    assert (triality(s) + triality(conjugate(s))) % 3 == 0


def test_highest_weight():
    hw = highest_weight(Irrep(1, 0))
    assert (hw.i, hw.i3, hw.y) == (F(1, 2), F(1, 2), F(1, 3))


def test_irrep_validation():
    with pytest.raises(ValueError):
        irrep(-1, 0)


@pytest.mark.parametrize("P", range(9))
@pytest.mark.parametrize("Q", range(9))
def test_lattice_size_matches_dimension(P, Q):
    s = Irrep(P, Q)
    assert len(enumerate_basis(s).states) == dimension(s)


@given(labels, labels)
def test_ordering_and_uniqueness(p, q):
    states = enumerate_basis(Irrep(p, q)).states
    keys = [(-st.y, -st.i, -st.i3) for st in states]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_octet_centre():
    assert weight_multiplicity(Irrep(1, 1), (0, 0)) == 2
    assert weight_multiplicity(Irrep(1, 1), (1, 0)) == 1


@given(labels, labels)
def test_corners_lie_in_diagram(p, q):
    s = Irrep(p, q)
    for i, y in corners(s).values():
        assert in_diagram(s, i, y)
    assert top_point(s) == corners(s)["C"]


@given(labels, labels)
def test_i_range_step(p, q):
    s = Irrep(p, q)
    for st in enumerate_basis(s).states:
        lo, hi = i_range(s, st.y)
        assert lo <= st.i <= hi
        assert (hi - st.i).denominator == 1


def test_parse_rational():
    assert parse_rational("-1/2") == F(-1, 2)
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(ValueError):
        parse_rational("1e3")
