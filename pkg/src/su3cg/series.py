"""Clebsch-Gordan series of D(P1,Q1) x D(P2,Q2)."""

from __future__ import annotations

from collections import Counter
from typing import Dict, Iterable, List, NamedTuple, Tuple

from .core import Irrep, conjugate, dimension, enumerate_basis, irrep


class SeriesTerm(NamedTuple):
    irrep: Irrep
    multiplicity: int


def _ordered(counts: Dict[Irrep, int]) -> List[SeriesTerm]:
    terms = [SeriesTerm(Irrep(*s), m) for s, m in counts.items() if m > 0]
    terms.sort(key=lambda t: (-(t.irrep.P + t.irrep.Q), -t.irrep.P))
    return terms


def _merge(labels: Iterable[Tuple[int, int]]) -> List[SeriesTerm]:
    c: Counter = Counter()
    for P, Q in labels:
        if P >= 0 and Q >= 0:
            c[(P, Q)] += 1
    return _ordered(c)


def series_pp(P1: int, P2: int) -> List[SeriesTerm]:
    return _merge((P1 + P2 - 2 * k, k) for k in range(min(P1, P2) + 1))


def series_qq(Q1: int, Q2: int) -> List[SeriesTerm]:
    return _merge((k, Q1 + Q2 - 2 * k) for k in range(min(Q1, Q2) + 1))


def series_pq(P: int, Q: int) -> List[SeriesTerm]:
    return _merge((P - k, Q - k) for k in range(min(P, Q) + 1))


def _block(r: int, r2: int, s: int, s2: int) -> List[Tuple[int, int]]:
    """Irreps of the traceless block built from (r, r2) covariant and (s, s2) contravariant indices."""
    out = [(r + r2, s + s2)]
    out += [(r + r2 - 2 * k, s + s2 + k) for k in range(1, min(r, r2) + 1)]
    out += [(r + r2 + k, s + s2 - 2 * k) for k in range(1, min(s, s2) + 1)]
    return out


def series_general(s1: Irrep, s2: Irrep) -> List[SeriesTerm]:
    (P1, Q1), (P2, Q2) = irrep(s1), irrep(s2)
    labels: List[Tuple[int, int]] = []
    for m in range(min(P1, Q2) + 1):
        for n in range(min(P2, Q1) + 1):
            labels += _block(P1 - m, P2 - n, Q1 - n, Q2 - m)
    return _merge(labels)


def multiplicity(s1: Irrep, s2: Irrep, s: Irrep) -> int:
    s = irrep(s)
    for t in series_general(s1, s2):
        if t.irrep == s:
            return t.multiplicity
    return 0


def weight_multiset(s: Irrep) -> Counter:
    return Counter((st.i3, st.y) for st in enumerate_basis(s).states)


def series_by_weights(s1: Irrep, s2: Irrep) -> List[SeriesTerm]:
    """Decomposition by repeatedly removing the character of the top remaining weight."""
    w1, w2 = weight_multiset(s1), weight_multiset(s2)
    rest: Counter = Counter()
    for (a3, ay), na in w1.items():
        for (b3, by), nb in w2.items():
            rest[(a3 + b3, ay + by)] += na * nb
    found: Counter = Counter()
    while rest:
        i3, y = max(rest, key=lambda w: (w[0], w[1]))
        P, Q = i3 + 3 * y / 2, i3 - 3 * y / 2
        if P.denominator != 1 or Q.denominator != 1 or P < 0 or Q < 0:
            raise RuntimeError(f"top weight ({i3}, {y}) is not dominant")
        s = Irrep(int(P), int(Q))
        n = rest[(i3, y)]
        found[s] += n
        for w, c in weight_multiset(s).items():
            rest[w] -= n * c
            if rest[w] < 0:
                raise RuntimeError("negative weight multiplicity while peeling")
            if rest[w] == 0:
                del rest[w]
    return _ordered(found)


def dimension_check(s1: Irrep, s2: Irrep) -> bool:
    total = sum(t.multiplicity * dimension(t.irrep) for t in series_general(s1, s2))
    return total == dimension(s1) * dimension(s2)


def conjugate_series(terms: List[SeriesTerm]) -> List[SeriesTerm]:
    return _ordered({conjugate(t.irrep): t.multiplicity for t in terms})
