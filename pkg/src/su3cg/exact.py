"""Exact scalars: rationals and signed square roots of rationals.

Rational numbers are plain :class:`fractions.Fraction` objects.  A
:class:`Surd` is ``sign * sqrt(radicand)`` with a non-negative rational
radicand; isoscalar factors, SU(2) coupling coefficients and generator
matrix elements all live in this set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]


class IncompatibleRadicands(ArithmeticError):
    """Sum of two surds whose ratio is not a rational square."""


class InternalError(RuntimeError):
    """Raised when an invariant that valid inputs guarantee is violated."""


def rat(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction; accepts ints, Fractions and ``"n/d"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact quantum numbers")
    return Fraction(x)


def ifact(x: Fraction | int) -> int:
    """Factorial of a quantity that must be a non-negative integer."""
    x = Fraction(x)
    if x.denominator != 1 or x < 0:
        raise InternalError(f"factorial of non-integral or negative argument {x}")
    return math.factorial(int(x))


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of ``q`` if it is a rational square, else None."""
    if q < 0:
        return None
    if is_square(q.numerator) and is_square(q.denominator):
        return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))
    return None


def _sqrt_ratio_to_float(p: int, q: int) -> float:
    # Correctly rounded sqrt(p/q): integer square root with a sticky bit.
    if p == 0:
        return 0.0
    shift = max(0, 2 * (110 - (p.bit_length() - q.bit_length()) // 2))
    shift += shift % 2
    num = (p << shift) // q
    r = math.isqrt(num)
    exact = r * r == num and (p << shift) % q == 0
    r2 = 2 * r + (0 if exact else 1)
    return float(Fraction(r2, 1 << (shift // 2 + 1)))


@dataclass(frozen=True, order=False)
class Surd:
    """``sign * sqrt(radicand)``; immutable and always in normal form."""

    sign: int
    radicand: Fraction

    def __post_init__(self) -> None:
        rad = Fraction(self.radicand)
        if rad < 0:
            raise ValueError("radicand must be non-negative")
        sign = int(self.sign)
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if rad == 0:
            sign = 0
        elif sign == 0:
            raise ValueError("sign 0 requires a zero radicand")
        object.__setattr__(self, "radicand", rad)
        object.__setattr__(self, "sign", sign)

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls) -> "Surd":
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> "Surd":
        return cls(1, Fraction(1))

    @classmethod
    def from_rational(cls, q: RationalLike) -> "Surd":
        q = rat(q)
        return cls((q > 0) - (q < 0), q * q)

    @classmethod
    def sqrt(cls, q: RationalLike, sign: int = 1) -> "Surd":
        """``sign * sqrt(q)`` for ``q >= 0``."""
        q = rat(q)
        if q < 0:
            raise ValueError(f"square root of negative rational {q}")
        return cls(sign if q else 0, q)

    # arithmetic ----------------------------------------------------------
    @property
    def square(self) -> Fraction:
        """Signed square, ``sign * radicand``."""
        return self.sign * self.radicand

    def is_zero(self) -> bool:
        return self.sign == 0

    def as_rational(self) -> Fraction | None:
        r = rational_sqrt(self.radicand)
        return None if r is None else self.sign * r

    def __neg__(self) -> "Surd":
        return Surd(-self.sign, self.radicand)

    def __mul__(self, other: "Surd | RationalLike") -> "Surd":
        if not isinstance(other, Surd):
            other = Surd.from_rational(other)
        return Surd(self.sign * other.sign, self.radicand * other.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other: "Surd | RationalLike") -> "Surd":
        if not isinstance(other, Surd):
            other = Surd.from_rational(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero surd")
        return Surd(self.sign * other.sign, self.radicand / other.radicand)

    def __add__(self, other: "Surd") -> "Surd":
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        ratio = rational_sqrt(other.radicand / self.radicand)
        if ratio is None:
            raise IncompatibleRadicands(f"sqrt({self.radicand}) + sqrt({other.radicand})")
        coeff = self.sign + other.sign * ratio
        # value = coeff * sqrt(self.radicand)
        return Surd((coeff > 0) - (coeff < 0), coeff * coeff * self.radicand)

    def __sub__(self, other: "Surd") -> "Surd":
        return self + (-other)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        mag = _sqrt_ratio_to_float(self.radicand.numerator, self.radicand.denominator)
        return mag if self.sign > 0 else -mag

    def __bool__(self) -> bool:
        return self.sign != 0

    def __repr__(self) -> str:
        return f"Surd({self})"

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        r = rational_sqrt(self.radicand)
        if r is not None:
            return str(self.sign * r)
        return ("-" if self.sign < 0 else "") + f"sqrt({self.radicand})"

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {"sign": self.sign, "num": self.radicand.numerator, "den": self.radicand.denominator}

    @classmethod
    def from_json(cls, d: dict) -> "Surd":
        return cls(int(d["sign"]), Fraction(int(d["num"]), int(d["den"])))


def surd_mul(a: Surd, b: Surd) -> Surd:
    return a * b


def surd_add(a: Surd, b: Surd) -> Surd:
    """Exact sum; raises :class:`IncompatibleRadicands` when it is not a surd."""
    return a + b


def surd_to_float(a: Surd) -> float:
    return float(a)


def surd_from_float(x: float, tol: float = 1e-10, max_den: int = 10**6) -> Surd | None:
    """Reconstruct a surd from a float whose square is a small-denominator rational.

    Returns None when no rational within ``tol`` of ``x*x`` is found.
    """
    sq = x * x
    q = Fraction(sq).limit_denominator(max_den)
    if abs(float(q) - sq) > tol:
        return None
    if q == 0:
        return Surd.zero() if abs(x) <= tol else None
    return Surd(1 if x > 0 else -1, q)


def sign_power(exponent: Fraction | int) -> int:
    """``(-1) ** exponent`` for an integral exponent; anything else is an error."""
    e = Fraction(exponent)
    if e.denominator != 1:
        raise InternalError(f"phase exponent {e} is not integral")
    return -1 if int(e) % 2 else 1


def half_integral(x: Fraction) -> bool:
    return (2 * x).denominator == 1


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
