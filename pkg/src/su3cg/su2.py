"""Exact SU(2) Clebsch-Gordan coefficients (Condon-Shortley) and 6j symbols."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Tuple

from .exact import Surd, ifact, rat

F = Fraction


class MalformedKey(ValueError):
    pass


class TriangleViolation(ValueError):
    pass


class Su2CgKey(NamedTuple):
    j1: Fraction
    m1: Fraction
    j2: Fraction
    m2: Fraction
    J: Fraction
    M: Fraction


def _half(x) -> Fraction:
    x = rat(x)
    if (2 * x).denominator != 1:
        raise MalformedKey(f"{x} is not a half-integer")
    return x


def triangle(a, b, c) -> bool:
    a, b, c = F(a), F(b), F(c)
    return abs(a - b) <= c <= a + b and (a + b + c).denominator == 1


def _delta_sq(a, b, c) -> Fraction:
    return F(ifact(a + b - c) * ifact(a - b + c) * ifact(-a + b + c), ifact(a + b + c + 1))


@lru_cache(maxsize=None)
def _cg(j1, m1, j2, m2, J, M) -> Surd:
    if m1 + m2 != M or not triangle(j1, j2, J):
        return Surd.zero()
    if abs(m1) > j1 or abs(m2) > j2 or abs(M) > J:
        return Surd.zero()
    if any((j - m).denominator != 1 for j, m in ((j1, m1), (j2, m2), (J, M))):
        return Surd.zero()
    pref = (2 * J + 1) * _delta_sq(j1, j2, J) * (
        ifact(J + M) * ifact(J - M) * ifact(j1 - m1) * ifact(j1 + m1) * ifact(j2 - m2) * ifact(j2 + m2)
    )
    total = F(0)
    k = 0
    while True:
        args = (j1 + j2 - J - k, j1 - m1 - k, j2 + m2 - k)
        if min(args) < 0:
            break
        lo = (J - j2 + m1 + k, J - j1 - m2 + k)
        if min(lo) >= 0:
            den = ifact(k) * ifact(args[0]) * ifact(args[1]) * ifact(args[2]) * ifact(lo[0]) * ifact(lo[1])
            total += F((-1) ** k, den)
        k += 1
    return Surd.sqrt(pref) * total


def su2_cgc(k: Su2CgKey | tuple) -> Surd:
    """<j1 m1 j2 m2 | J M> as an exact surd; zero when selection rules fail."""
    j1, m1, j2, m2, J, M = (_half(x) for x in k)
    return _cg(j1, m1, j2, m2, J, M)


def cg(j1, m1, j2, m2, J, M) -> Surd:
    return su2_cgc((j1, m1, j2, m2, J, M))


def su2_couplings(j1, j2, J, M) -> List[Tuple[Fraction, Fraction, Surd]]:
    """Nonzero (m1, m2, C) with m1 + m2 = M, ordered by descending m1."""
    j1, j2, J, M = (_half(x) for x in (j1, j2, J, M))
    if not triangle(j1, j2, J):
        raise TriangleViolation(f"({j1}, {j2}, {J}) violates the triangle rule")
    out = []
    m1 = j1
    while m1 >= -j1:
        m2 = M - m1
        if abs(m2) <= j2:
            c = _cg(j1, m1, j2, m2, J, M)
            if not c.is_zero():
                out.append((m1, m2, c))
        m1 -= 1
    return out


@lru_cache(maxsize=None)
def _sixj(a, b, c, d, e, f) -> Surd:
    triads = ((a, b, c), (a, e, f), (d, b, f), (d, e, c))
    if not all(triangle(*t) for t in triads):
        return Surd.zero()
    pref = F(1)
    for t in triads:
        pref *= _delta_sq(*t)
    sums = [a + b + c, a + e + f, d + b + f, d + e + c]
    diffs = [a + b + d + e, a + c + d + f, b + c + e + f]
    total = F(0)
    t = max(sums)
    while t <= min(diffs):
        den = ifact(t - sums[0]) * ifact(t - sums[1]) * ifact(t - sums[2]) * ifact(t - sums[3])
        den *= ifact(diffs[0] - t) * ifact(diffs[1] - t) * ifact(diffs[2] - t)
        total += F((-1) ** int(t) * ifact(t + 1), den)
        t += 1
    return Surd.sqrt(pref) * total


def sixj(a, b, c, d, e, f) -> Surd:
    """Wigner 6j symbol {a b c; d e f}, exact."""
    return _sixj(*(_half(x) for x in (a, b, c, d, e, f)))
