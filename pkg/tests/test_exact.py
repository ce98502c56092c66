import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from su3cg.exact import (
    IncompatibleRadicands,
    InternalError,
    Surd,
    fmt_rational,
    ifact,
    rat,
    rational_sqrt,
    sign_power,
    surd_add,
    surd_from_float,
    surd_mul,
)

rationals = st.fractions(min_value=0, max_value=50, max_denominator=60)
signs = st.sampled_from([1, -1])
surds = st.builds(Surd, signs, rationals)


def test_normal_form():
    assert Surd(-1, F(0)) == Surd.zero()
    assert Surd.sqrt(F(1, 4)).as_rational() == F(1, 2)
    assert Surd.sqrt(2).as_rational() is None
    assert str(Surd.sqrt(F(1, 20), -1)) == "-sqrt(1/20)"
    assert str(Surd.from_rational(F(-1, 2))) == "-1/2"


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == F(1, 2)


def test_ifact_guards():
    assert ifact(F(4)) == 24
    with pytest.raises(InternalError):
        ifact(F(1, 2))
    with pytest.raises(InternalError):
        ifact(-1)


def test_sign_power():
    assert sign_power(F(3)) == -1
    assert sign_power(-2) == 1
    with pytest.raises(InternalError):
        sign_power(F(1, 2))


def test_add_needs_compatible_radicands():
    a = Surd.sqrt(F(1, 8))
    assert a + a == Surd.sqrt(F(1, 2))
    assert a - a == Surd.zero()
    with pytest.raises(IncompatibleRadicands):
        surd_add(Surd.sqrt(2), Surd.sqrt(3))


def test_rational_sqrt():
    assert rational_sqrt(F(9, 49)) == F(3, 7)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(-1)) is None


def test_fmt():
    assert fmt_rational(F(-3, 2)) == "-3/2"
    assert fmt_rational(F(4)) == "4"


@given(surds, surds)
def test_mul_commutes_and_squares(a, b):
    assert surd_mul(a, b) == surd_mul(b, a)
    assert (a * b).square == a.square * b.square


@given(surds)
def test_json_round_trip(a):
    assert Surd.from_json(a.to_json()) == a


@given(surds)
def test_float_is_correctly_rounded(a):
    want = a.sign * math.sqrt(a.radicand.numerator / a.radicand.denominator)
    assert abs(float(a) - want) <= 2 * abs(want) * 2.0 ** -52


@given(st.fractions(min_value=F(1, 200), max_value=20, max_denominator=200), signs)
def test_reconstruction_from_float(q, s):
    a = Surd(s, q)
    assert surd_from_float(float(a)) == a


@given(surds, surds.filter(bool))
def test_division_inverts_multiplication(a, b):
    assert (a * b) / b == a
