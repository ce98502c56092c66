"""Full SU(3) Clebsch-Gordan coefficients and the canonical basis of V(P,Q)
inside V(P,0) x V(0,Q).

A coefficient factorises as an isoscalar factor times an SU(2) coupling
coefficient; both factors are returned so exactness is never lost.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .core import Irrep, State, enumerate_basis, in_lattice, irrep
from .exact import Surd, ifact, rat, sign_power
from .isoscalar import (
    HwLatticePoint,
    NotInSeries,
    closed_form_pq,
    isoscalar_row,
    isoscalar_tables,
    pq_point,
    pq_mu_window,
)
from .su2 import cg

F = Fraction
ZERO_CUT = 1e-13


class BadState(ValueError):
    pass


class CgcQuery(NamedTuple):
    """Coupling query; factor states are (isospin, i3, hypercharge) triples."""

    s1: Irrep
    state1: Tuple[Fraction, Fraction, Fraction]
    s2: Irrep
    state2: Tuple[Fraction, Fraction, Fraction]
    s: Irrep
    gamma: int
    state: Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class CgcValue:
    alpha: float
    alpha_exact: Optional[Surd]
    su2: Surd
    value: float
    reason: Optional[str] = None

    @property
    def exact(self) -> Optional[Surd]:
        return None if self.alpha_exact is None else self.alpha_exact * self.su2


def _zero(reason: str) -> CgcValue:
    return CgcValue(0.0, Surd.zero(), Surd.zero(), 0.0, reason)


def cg_coefficient(q: CgcQuery) -> CgcValue:
    s1, s2, s = irrep(q.s1), irrep(q.s2), irrep(q.s)
    j, m, mu = (rat(x) for x in q.state1)
    k, m2, mu2 = (rat(x) for x in q.state2)
    i, i3, y = (rat(x) for x in q.state)
    for lab, st in ((s1, (j, m, mu)), (s2, (k, m2, mu2)), (s, (i, i3, y))):
        if not in_lattice(lab, *st):
            raise BadState(f"{st} is not a canonical state of {lab}")
    tabs = isoscalar_tables(s1, s2, s)  # raises NotInSeries
    if not 1 <= q.gamma <= len(tabs):
        raise BadState(f"gamma must lie in 1..{len(tabs)}")
    if mu + mu2 != y:
        return _zero("hypercharge not additive")
    if m + m2 != i3:
        return _zero("i3 not additive")
    c = cg(j, m, k, m2, i, i3)
    if c.is_zero():
        return _zero("isospin coupling vanishes")
    row = tabs[q.gamma - 1].row(i, y)
    a = row.get(mu, j, k)
    ax = None
    if row.exact is not None:
        ax = dict(zip(row.points, row.exact)).get(HwLatticePoint(mu, j, k), Surd.zero())
    return CgcValue(a, ax, c, a * float(c))


@dataclass
class CouplingBlock:
    """Expansion of |s gamma i i3 y> over product states, one row per i3."""

    s1: Irrep
    s2: Irrep
    s: Irrep
    gamma: int
    i: Fraction
    y: Fraction
    row_states: List[State]
    col_pairs: List[Tuple[State, State]]
    matrix: np.ndarray


def coupled_vector(s1, s2, s, gamma, i, i3, y) -> Dict[Tuple[State, State], float]:
    """Sparse expansion of one coupled state over product basis pairs."""
    s1, s2 = irrep(s1), irrep(s2)
    row = isoscalar_row(s1, s2, s, gamma, i, y)
    out: Dict[Tuple[State, State], float] = {}
    i, i3, y = rat(i), rat(i3), rat(y)
    for (mu, j, k), a in zip(row.points, row.values):
        if a == 0.0:
            continue
        m = j
        while m >= -j:
            m2 = i3 - m
            if abs(m2) <= k and (k - m2).denominator == 1:
                c = float(cg(j, m, k, m2, i, i3))
                if c:
                    out[(State(s1, j, m, mu), State(s2, k, m2, y - mu))] = a * c
            m -= 1
    return out


def coupling_block(s1, s2, s, gamma, i, y) -> CouplingBlock:
    s1, s2, s = irrep(s1), irrep(s2), irrep(s)
    i, y = rat(i), rat(y)
    rows = [State(s, i, i - n, y) for n in range(int(2 * i) + 1)]
    vecs = [coupled_vector(s1, s2, s, gamma, i, st.i3, y) for st in rows]
    idx1, idx2 = enumerate_basis(s1).index(), enumerate_basis(s2).index()
    cols = sorted({p for v in vecs for p in v}, key=lambda p: (idx1[p[0].key()], idx2[p[1].key()]))
    pos = {p: n for n, p in enumerate(cols)}
    mat = np.zeros((len(rows), len(cols)))
    for r, v in enumerate(vecs):
        for p, val in v.items():
            if abs(val) > ZERO_CUT:
                mat[r, pos[p]] = val
    return CouplingBlock(s1, s2, s, gamma, i, y, rows, cols, mat)


def product_vector(s1, s2, vec: Dict[Tuple[State, State], float]) -> np.ndarray:
    """Dense vector in the ordered product basis (state1 major)."""
    l1, l2 = enumerate_basis(s1), enumerate_basis(s2)
    i1, i2 = l1.index(), l2.index()
    n2 = len(l2)
    out = np.zeros(len(l1) * n2)
    for (a, b), v in vec.items():
        out[i1[a.key()] * n2 + i2[b.key()]] = v
    return out


# canonical basis from symmetric tensors -----------------------------------

def canonical_embedding(P: int, Q: int) -> Dict[State, Dict[Tuple[State, State], Surd]]:
    """Every |P Q i i3 y> as an exact combination of xi (from V(P,0)) times eta (from V(0,Q))."""
    s = Irrep(P, Q)
    sp, sq = Irrep(P, 0), Irrep(0, Q)
    out: Dict[State, Dict[Tuple[State, State], Surd]] = {}
    for st in enumerate_basis(s).states:
        i, i3, y = st.i, st.i3, st.y
        lo, hi = pq_mu_window(P, Q, i, y)
        vec: Dict[Tuple[State, State], Surd] = {}
        mu = hi
        while mu >= lo:
            a = closed_form_pq(P, Q, i, y, mu)
            if not a.is_zero():
                _, j, k = pq_point(P, Q, y, mu)
                m = j
                while m >= -j:
                    m2 = i3 - m
                    if abs(m2) <= k:
                        c = cg(j, m, k, m2, i, i3)
                        if not c.is_zero():
                            vec[(State(sp, j, m, mu), State(sq, k, m2, y - mu))] = a * c
                    m -= 1
            mu -= 1
        out[st] = vec
    return out


@dataclass(frozen=True)
class SymmetricBasisVector:
    """Monomial realisation: normaliser * phase * product of powers."""

    exponents: Tuple[int, int, int]
    normalizer: Surd
    phase: int

    def coefficient(self) -> Surd:
        return self.normalizer * self.phase


def symmetric_normalizer(P: int, i, i3, y) -> Surd:
    i, i3, y = rat(i), rat(i3), rat(y)
    return Surd.sqrt(F(ifact(P), ifact(i - i3) * ifact(i + i3) * ifact(F(P, 3) - y)))


def xi_monomial(P: int, i3, y) -> SymmetricBasisVector:
    """State of V(P,0) at (i3, y) as a monomial in x1, x2, x3."""
    i3, y = rat(i3), rat(y)
    i = F(P, 3) + y / 2
    if not in_lattice(Irrep(P, 0), i, i3, y):
        raise BadState(f"(i3={i3}, y={y}) not a weight of ({P},0)")
    p = (int(i + i3), int(i - i3), int(F(P, 3) - y))
    return SymmetricBasisVector(p, symmetric_normalizer(P, i, i3, y), 1)


def eta_monomial(Q: int, k3, y) -> SymmetricBasisVector:
    """State of V(0,Q) at (k3, y) as a monomial in the conjugate variables y^1, y^2, y^3."""
    k3, y = rat(k3), rat(y)
    k = F(Q, 3) - y / 2
    if not in_lattice(Irrep(0, Q), k, k3, y):
        raise BadState(f"(k3={k3}, y={y}) not a weight of (0,{Q})")
    q = (int(k - k3), int(k + k3), int(F(Q, 3) + y))
    return SymmetricBasisVector(q, symmetric_normalizer(Q, k, -k3, -y), sign_power(k - k3))


def monomial_expansion(P: int, Q: int, state: State) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], float]:
    """|P Q i i3 y> as a polynomial in x and y variables: (x exponents, y exponents) -> coefficient."""
    vec = canonical_embedding(P, Q)[State(Irrep(P, Q), rat(state.i), rat(state.i3), rat(state.y))]
    out: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], float] = {}
    for (a, b), c in vec.items():
        xm, ym = xi_monomial(P, a.i3, a.y), eta_monomial(Q, b.i3, b.y)
        key = (xm.exponents, ym.exponents)
        out[key] = out.get(key, 0.0) + float(c * xm.coefficient() * ym.coefficient())
    return out


def cgc_table(s1, s2, s) -> Dict[Tuple[int, State], Dict[Tuple[State, State], float]]:
    """All coupled states of every gamma copy of ``s``."""
    s = irrep(s)
    n = len(isoscalar_tables(s1, s2, s))
    out = {}
    for g in range(1, n + 1):
        for st in enumerate_basis(s).states:
            out[(g, st)] = coupled_vector(s1, s2, s, g, st.i, st.i3, st.y)
    return out


__all__ = [
    "BadState", "CgcQuery", "CgcValue", "CouplingBlock", "NotInSeries", "SymmetricBasisVector",
    "canonical_embedding", "cg_coefficient", "cgc_table", "coupled_vector", "coupling_block",
    "eta_monomial", "monomial_expansion", "product_vector", "symmetric_normalizer", "xi_monomial",
]
