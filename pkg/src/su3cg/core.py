"""Irrep labels, Casimir invariants and the canonical-basis weight lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Tuple

from .exact import InternalError, rat

F = Fraction
HALF = F(1, 2)


class YOutOfRange(ValueError):
    """Hypercharge outside the vertical extent of the weight diagram."""


class Irrep(NamedTuple):
    """Label (P, Q) of the irrep D(P, Q)."""

    P: int
    Q: int

    def __str__(self) -> str:
        return f"({self.P},{self.Q})"


def irrep(P: int, Q: int | None = None) -> Irrep:
    if Q is None:
        P, Q = P
    P, Q = int(P), int(Q)
    if P < 0 or Q < 0:
        raise ValueError(f"irrep labels must be non-negative, got ({P},{Q})")
    return Irrep(P, Q)


class Weight(NamedTuple):
    i3: Fraction
    y: Fraction


class State(NamedTuple):
    """Canonical basis vector |P Q i i3 y>."""

    irrep: Irrep
    i: Fraction
    i3: Fraction
    y: Fraction

    def key(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.i, self.i3, self.y)


@dataclass(frozen=True)
class WeightLattice:
    irrep: Irrep
    states: Tuple[State, ...]
    multiplicity_index: Dict[Weight, Tuple[Fraction, ...]]

    def index(self) -> Dict[Tuple[Fraction, Fraction, Fraction], int]:
        """Map (i, i3, y) to the position of the state in ``states``."""
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {s.key(): n for n, s in enumerate(self.states)}
            object.__setattr__(self, "_index", idx)
        return idx

    def __len__(self) -> int:
        return len(self.states)


def dimension(s: Irrep) -> int:
    P, Q = s
    return (P + 1) * (Q + 1) * (P + Q + 2) // 2


def casimir_f(s: Irrep) -> Fraction:
    P, Q = s
    return F(P * P + P * Q + Q * Q, 3) + P + Q


def casimir_g(s: Irrep) -> Fraction:
    P, Q = s
    return F((P - Q) * (2 * P + Q + 3) * (P + 2 * Q + 3), 9)


def highest_weight(s: Irrep) -> State:
    """State of maximal i3: i = i3 = (P+Q)/2, y = (P-Q)/3."""
    P, Q = s
    i = F(P + Q, 2)
    return State(irrep(s), i, i, F(P - Q, 3))


def top_point(s: Irrep) -> Tuple[Fraction, Fraction]:
    """(i, y) of the vector annihilated by I+, K+ and L+: (P/2, (P+2Q)/3)."""
    P, Q = s
    return F(P, 2), F(P + 2 * Q, 3)


def conjugate(s: Irrep) -> Irrep:
    return Irrep(s[1], s[0])


def triality(s: Irrep) -> int:
    t = (s[0] - s[1]) % 3
    return -1 if t == 2 else t


def y_values(s: Irrep) -> List[Fraction]:
    """Admissible hypercharges, descending."""
    P, Q = s
    top = F(P + 2 * Q, 3)
    return [top - n for n in range(P + Q + 1)]


@lru_cache(maxsize=None)
def y_admissible(s: Irrep, y: Fraction) -> bool:
    P, Q = s
    y = rat(y)
    if not (-F(2 * P + Q, 3) <= y <= F(P + 2 * Q, 3)):
        return False
    return (F(P + 2 * Q, 3) - y).denominator == 1


@lru_cache(maxsize=None)
def i_range(s: Irrep, y) -> Tuple[Fraction, Fraction]:
    """Minimum and maximum isospin on the hypercharge row ``y``."""
    P, Q = s
    y = rat(y)
    if not y_admissible(s, y):
        raise YOutOfRange(f"y={y} not admissible for {irrep(s)}")
    d = F(P - Q, 3)
    lo_a = d + y / 2
    lo_b = -d - y / 2
    i_min = lo_a if y >= -2 * d else lo_b
    hi_a = F(2 * P + Q, 3) - y / 2
    hi_b = F(P + 2 * Q, 3) + y / 2
    i_max = hi_a if y >= d else hi_b
    # the two branches meet on their boundary rows
    if y == -2 * d and lo_a != lo_b:
        raise InternalError("i_min branches disagree at the boundary")
    if y == d and hi_a != hi_b:
        raise InternalError("i_M branches disagree at the boundary")
    return i_min, i_max


@lru_cache(maxsize=None)
def i_values(s: Irrep, y) -> Tuple[Fraction, ...]:
    """Isospins present on row ``y``, descending; empty if ``y`` is not admissible."""
    y = rat(y)
    if not y_admissible(s, y):
        return ()
    lo, hi = i_range(s, y)
    out = []
    i = hi
    while i >= lo:
        out.append(i)
        i -= 1
    return tuple(out)


@lru_cache(maxsize=None)
def in_diagram(s: Irrep, i, y) -> bool:
    """Whether (i, y) is a node of the (i, y) diagram of ``s``."""
    i, y = rat(i), rat(y)
    if not y_admissible(s, y):
        return False
    lo, hi = i_range(s, y)
    return lo <= i <= hi and (hi - i).denominator == 1


@lru_cache(maxsize=None)
def in_lattice(s: Irrep, i, i3, y) -> bool:
    i, i3 = rat(i), rat(i3)
    return in_diagram(s, i, y) and abs(i3) <= i and (i - i3).denominator == 1


def iy_nodes(s: Irrep) -> List[Tuple[Fraction, Fraction]]:
    """All (i, y) nodes, by descending y then descending i."""
    return [(i, y) for y in y_values(s) for i in i_values(s, y)]


@lru_cache(maxsize=None)
def _enumerate(s: Irrep) -> WeightLattice:
    states: List[State] = []
    mult: Dict[Weight, List[Fraction]] = {}
    for i, y in iy_nodes(s):
        i3 = i
        while i3 >= -i:
            states.append(State(s, i, i3, y))
            mult.setdefault(Weight(i3, y), []).append(i)
            i3 -= 1
    if len(states) != dimension(s):
        raise InternalError(f"lattice of {s} has {len(states)} states, expected {dimension(s)}")
    return WeightLattice(s, tuple(states), {w: tuple(v) for w, v in mult.items()})


def enumerate_basis(s: Irrep) -> WeightLattice:
    return _enumerate(irrep(s))


def weight_multiplicity(s: Irrep, w) -> int:
    i3, y = rat(w[0]), rat(w[1])
    return len(enumerate_basis(s).multiplicity_index.get(Weight(i3, y), ()))


def corners(s: Irrep) -> Dict[str, Tuple[Fraction, Fraction]]:
    """The four vertices A, B, C, D of the (i, y) parallelogram."""
    P, Q = s
    return {
        "A": (F(Q, 2), -F(2 * P + Q, 3)),
        "B": (F(P + Q, 2), F(P - Q, 3)),
        "C": (F(P, 2), F(P + 2 * Q, 3)),
        "D": (F(0), F(2 * (Q - P), 3)),
    }


def parse_rational(text: str) -> Fraction:
    """Parse ``n`` or ``n/d``; floats are rejected."""
    text = text.strip()
    if any(c in text for c in ".eE"):
        raise ValueError(f"expected an exact rational, got {text!r}")
    return Fraction(text)
