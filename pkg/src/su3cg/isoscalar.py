"""Isoscalar factors of SU(3) couplings.

A coupled state of D(s) inside D(s1) x D(s2) is expanded as

    |s i i3 y> = sum_{mu j k} alpha^{i y}_{mu j k} [ |s1 j mu> |s2 k y-mu> ]^i_{i3}

where the bracket is SU(2) coupling of isospins j and k to i.  The pair
(K+, L+) transforms as an isospin doublet, so its action on both sides
reduces to isospin-reduced matrix elements; those of the product space
follow from single-factor elements by 6j recoupling.  This gives

* the highest-weight system: L+ annihilates the vector at (P/2, (P+2Q)/3);
* a one-row recurrence: every row at hypercharge y-1 follows from one
  neighbouring row at y by applying the adjoint doublet.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .core import (
    Irrep,
    casimir_f,
    conjugate,
    i_values,
    in_diagram,
    irrep,
    iy_nodes,
    top_point,
    y_values,
)
from .exact import Surd, ifact, rat, sign_power, surd_from_float
from .generators import chi_kappa
from .series import multiplicity
from .su2 import sixj, triangle

F = Fraction
HALF = F(1, 2)
SVD_RTOL = 1e-8


class NotInSeries(ValueError):
    pass


class RankMismatch(RuntimeError):
    pass


class PropagationSingularity(RuntimeError):
    pass


class HwLatticePoint(NamedTuple):
    mu: Fraction
    j: Fraction
    k: Fraction

    def label(self) -> str:
        return f"({self.mu},{self.j},{self.k})"


@dataclass
class IsoscalarRow:
    """One row alpha^{i y}_{mu j k} of a coupling (s1, s2, s, gamma)."""

    s1: Irrep
    s2: Irrep
    s: Irrep
    gamma: int
    i: Fraction
    y: Fraction
    points: Tuple[HwLatticePoint, ...]
    values: np.ndarray
    exact: Optional[Tuple[Surd, ...]] = None

    def as_dict(self) -> Dict[HwLatticePoint, float]:
        return dict(zip(self.points, self.values.tolist()))

    def get(self, mu, j, k) -> float:
        p = HwLatticePoint(rat(mu), rat(j), rat(k))
        for q, v in zip(self.points, self.values):
            if q == p:
                return float(v)
        return 0.0

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))


@dataclass
class IsoscalarTable:
    s1: Irrep
    s2: Irrep
    s: Irrep
    gamma: int
    rows: Dict[Tuple[Fraction, Fraction], IsoscalarRow] = field(default_factory=dict)
    provenance: str = "recurrence"

    def row(self, i, y) -> IsoscalarRow:
        return self.rows[(rat(i), rat(y))]


# lattices -------------------------------------------------------------

@lru_cache(maxsize=None)
def row_lattice(s1: Irrep, s2: Irrep, i, y) -> Tuple[HwLatticePoint, ...]:
    """Points (mu, j, k) that can contribute to the row (i, y), ascending."""
    i, y = rat(i), rat(y)
    pts = []
    for mu in sorted(y_values(s1)):
        for j in sorted(i_values(s1, mu)):
            for k in sorted(i_values(s2, y - mu)):
                if triangle(j, k, i):
                    pts.append(HwLatticePoint(mu, j, k))
    pts.sort()
    return tuple(pts)


def _check_series(s1, s2, s) -> int:
    m = multiplicity(s1, s2, s)
    if m == 0:
        raise NotInSeries(f"{s} does not occur in {s1} x {s2}")
    return m


def hw_lattice(s1, s2, s) -> List[HwLatticePoint]:
    s1, s2, s = irrep(s1), irrep(s2), irrep(s)
    _check_series(s1, s2, s)
    return list(row_lattice(s1, s2, *top_point(s)))


# reduced matrix elements ----------------------------------------------

def reduced_single(s: Irrep, i, y, i2) -> float:
    """Isospin-reduced element of the (K+, L+) doublet from (i, y) to (i2, y+1)."""
    i, y, i2 = rat(i), rat(y), rat(i2)
    if not in_diagram(s, i, y) or not in_diagram(s, i2, y + 1):
        return 0.0
    chi, kap = chi_kappa(s, i, y)
    if i2 == i + HALF:
        return float(chi)
    if i2 == i - HALF and i > 0:
        return -math.sqrt(float(2 * i + 1) / float(2 * i)) * float(kap)
    return 0.0


@lru_cache(maxsize=None)
def _coupled(s1: Irrep, s2: Irrep, y, b: HwLatticePoint, I, b2: HwLatticePoint, I2) -> float:
    """Reduced element of the total doublet between coupled product states.

    ``b`` couples to isospin I at hypercharge y; ``b2`` to I2 at y+1.
    """
    mu, j, k = b
    mu2, j2, k2 = b2
    if not triangle(j, k, I) or not triangle(j2, k2, I2):
        return 0.0
    if mu2 == mu + 1 and k2 == k:
        r = reduced_single(s1, j, mu, j2)
        if r == 0.0:
            return 0.0
        ph = sign_power(j2 + k + I + HALF)
        return ph * math.sqrt(float((2 * I + 1) * (2 * j2 + 1))) * float(sixj(j2, I2, k, I, j, HALF)) * r
    if mu2 == mu and j2 == j:
        r = reduced_single(s2, k, y - mu, k2)
        if r == 0.0:
            return 0.0
        ph = sign_power(j + k + I2 + HALF)
        return ph * math.sqrt(float((2 * I + 1) * (2 * k2 + 1))) * float(sixj(k2, I2, j, I, k, HALF)) * r
    return 0.0


def coupled_reduced(s1, s2, y, b, I, b2, I2) -> float:
    return _coupled(irrep(s1), irrep(s2), rat(y), HwLatticePoint(*b), rat(I), HwLatticePoint(*b2), rat(I2))


def _neighbours(b: HwLatticePoint) -> List[HwLatticePoint]:
    mu, j, k = b
    return [
        HwLatticePoint(mu + 1, j + HALF, k),
        HwLatticePoint(mu + 1, j - HALF, k),
        HwLatticePoint(mu, j, k + HALF),
        HwLatticePoint(mu, j, k - HALF),
    ]


def transition_matrix(s1: Irrep, s2: Irrep, i, y, i2) -> np.ndarray:
    """Matrix of coupled reduced elements from row (i, y) to row (i2, y+1)."""
    src = row_lattice(s1, s2, i, y)
    dst = row_lattice(s1, s2, i2, y + 1)
    pos = {p: n for n, p in enumerate(dst)}
    m = np.zeros((len(dst), len(src)))
    for c, b in enumerate(src):
        for b2 in _neighbours(b):
            r = pos.get(b2)
            if r is not None:
                m[r, c] = _coupled(s1, s2, y, b, i, b2, i2)
    return m


# highest weight --------------------------------------------------------

def hw_system(s1, s2, s) -> np.ndarray:
    """Stacked constraints expressing that the doublet annihilates the top vector."""
    s1, s2, s = irrep(s1), irrep(s2), irrep(s)
    i, y = top_point(s)
    blocks = [transition_matrix(s1, s2, i, y, i2) for i2 in (i + HALF, i - HALF) if i2 >= 0]
    blocks = [b for b in blocks if b.size]
    n = len(row_lattice(s1, s2, i, y))
    return np.vstack(blocks) if blocks else np.zeros((0, n))


def null_space(a: np.ndarray, rtol: float = SVD_RTOL) -> np.ndarray:
    """Orthonormal basis (columns) of the null space of ``a``."""
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n)
    _, sv, vt = np.linalg.svd(a)
    scale = sv[0] if sv.size and sv[0] > 0 else 1.0
    rank = int(np.sum(sv > rtol * scale))
    return vt[rank:].T.copy()


def exchange_matrix(s1: Irrep, i, y, points: Sequence[HwLatticePoint]) -> np.ndarray:
    """Factor exchange on a row when s1 = s2: (E a)(mu,j,k) = (-1)^(j+k-i) a(y-mu,k,j)."""
    pos = {p: n for n, p in enumerate(points)}
    e = np.zeros((len(points), len(points)))
    for r, (mu, j, k) in enumerate(points):
        c = pos[HwLatticePoint(y - mu, k, j)]
        e[r, c] = sign_power(j + k - i)
    return e


def _lead_index(points, vec, order: str) -> int:
    nz = [n for n, v in enumerate(vec) if abs(v) > 1e-9]
    if order == "jk":
        return max(nz, key=lambda n: (points[n].j, points[n].k, points[n].mu))
    return max(nz, key=lambda n: (points[n].k, points[n].j, points[n].mu))


def _fix_sign(points, vec, gamma: int) -> np.ndarray:
    lead = _lead_index(points, vec, "jk" if gamma == 1 else "kj")
    return vec if vec[lead] > 0 else -vec


def _gram_schmidt(basis: np.ndarray, seeds: List[int]) -> List[np.ndarray]:
    out: List[np.ndarray] = []
    dim = basis.shape[1]
    for n in seeds:
        if len(out) == dim:
            break
        v = basis @ basis[n, :]  # projection of the unit vector e_n
        for u in out:
            v = v - np.dot(u, v) * u
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            v = v / nv
            for u in out:  # one refinement pass
                v = v - np.dot(u, v) * u
            out.append(v / np.linalg.norm(v))
    return out


def exactify(vec: np.ndarray) -> Optional[Tuple[Surd, ...]]:
    """Surd form of a unit row when every entry is recognisably a surd."""
    out = []
    for v in vec:
        if abs(v) < 1e-13:
            out.append(Surd.zero())
            continue
        sv = surd_from_float(float(v), tol=1e-11, max_den=10**5)
        if sv is None or abs(float(sv) - v) > 1e-12:
            return None
        out.append(sv)
    if sum((x.radicand for x in out), F(0)) != 1:
        return None
    return tuple(out)


def _make_row(s1, s2, s, gamma, i, y, points, vec) -> IsoscalarRow:
    vec = np.where(np.abs(vec) < 1e-14, 0.0, vec)
    return IsoscalarRow(s1, s2, s, gamma, i, y, tuple(points), vec, exactify(vec))


def _self_conjugate(s: Irrep) -> bool:
    return s[0] == s[1]


def _derived_by_conjugation(s1, s2, s) -> bool:
    return _self_conjugate(s1) and _self_conjugate(s2) and s[0] < s[1]


def conjugate_row(row: IsoscalarRow, s: Irrep) -> IsoscalarRow:
    """Row of ``s`` at (i, -y) from a row of its conjugate at (i, y).

    alpha^{i,-y,s}_{-mu,j,k} = (-1)^(i+y+j+k) alpha^{i,y,conj s}_{mu,j,k}.
    """
    i, y = row.i, row.y
    pts = row_lattice(row.s1, row.s2, i, -y)
    src = row.as_dict()
    vec = np.array([sign_power(i + y + p.j + p.k) * src[HwLatticePoint(-p.mu, p.j, p.k)] for p in pts])
    return _make_row(row.s1, row.s2, s, row.gamma, i, -y, pts, vec)


def hw_solve(s1, s2, s) -> List[IsoscalarRow]:
    """Orthonormal highest-weight rows, one per multiplicity index gamma."""
    s1, s2, s = irrep(s1), irrep(s2), irrep(s)
    mult = _check_series(s1, s2, s)
    i, y = top_point(s)
    if _derived_by_conjugation(s1, s2, s):
        sc = conjugate(s)
        tables = isoscalar_tables(s1, s2, sc)
        # the top of s mirrors the bottom-left corner (P/2, -(P+2Q)/3) of conj s
        return [conjugate_row(t.row(i, -y), s) for t in tables]
    points = list(row_lattice(s1, s2, i, y))
    ns = null_space(hw_system(s1, s2, s))
    if ns.shape[1] != mult:
        raise RankMismatch(f"{s} in {s1}x{s2}: null space {ns.shape[1]}, multiplicity {mult}")
    seeds = sorted(range(len(points)), key=lambda n: (points[n].j, points[n].k, points[n].mu), reverse=True)
    vecs: List[np.ndarray] = []
    if s1 == s2 and mult > 1:
        e = exchange_matrix(s1, i, y, points)
        ev, u = np.linalg.eigh(ns.T @ e @ ns)
        for sign in (-1.0, 1.0):  # antisymmetric first
            sub = ns @ u[:, np.abs(ev - sign) < 1e-6]
            vecs += _gram_schmidt(sub, seeds)
    else:
        vecs = _gram_schmidt(ns, seeds)
    rows = []
    for g, v in enumerate(vecs, start=1):
        rows.append(_make_row(s1, s2, s, g, i, y, points, _fix_sign(points, v, g)))
    return rows


# propagation -------------------------------------------------------------

def source_for(s: Irrep, i, y) -> Tuple[Fraction, Fraction]:
    """Neighbouring node at y+1 used to reach (i, y)."""
    P, Q = s
    on_nu = i == F(P - Q, 3) + y / 2
    if not on_nu and i > 0 and in_diagram(s, i - HALF, y + 1):
        return i - HALF, y + 1
    if in_diagram(s, i + HALF, y + 1):
        return i + HALF, y + 1
    raise PropagationSingularity(f"no usable neighbour above (i={i}, y={y}) in {s}")


def lower_step(s1: Irrep, s2: Irrep, s: Irrep, src: IsoscalarRow, i, y) -> np.ndarray:
    r_s = reduced_single(s, i, y, src.i)
    if r_s == 0.0:
        raise PropagationSingularity(f"vanishing reduced element into (i={i}, y={y}) of {s}")
    m = transition_matrix(s1, s2, i, y, src.i)
    return (m.T @ src.values) / r_s


def lower_full_table(s1, s2, s, hw_row: IsoscalarRow) -> IsoscalarTable:
    """Fill every (i, y) row of ``s`` from its top row."""
    s1, s2, s = irrep(s1), irrep(s2), irrep(s)
    tab = IsoscalarTable(s1, s2, s, hw_row.gamma)
    top = top_point(s)
    tab.rows[top] = hw_row
    for i, y in iy_nodes(s):
        if (i, y) == top:
            continue
        src = tab.rows[source_for(s, i, y)]
        vec = lower_step(s1, s2, s, src, i, y)
        tab.rows[(i, y)] = _make_row(s1, s2, s, hw_row.gamma, i, y, row_lattice(s1, s2, i, y), vec)
    return tab


_TABLES: Dict[Tuple[Irrep, Irrep, Irrep], List[IsoscalarTable]] = {}
_LOCK = threading.RLock()


def isoscalar_tables(s1, s2, s) -> List[IsoscalarTable]:
    """All gamma tables of (s1, s2, s), memoised."""
    key = (irrep(s1), irrep(s2), irrep(s))
    with _LOCK:
        if key not in _TABLES:
            _TABLES[key] = [lower_full_table(*key, r) for r in hw_solve(*key)]
        return _TABLES[key]


def isoscalar_row(s1, s2, s, gamma, i, y) -> IsoscalarRow:
    tabs = isoscalar_tables(s1, s2, s)
    if not 1 <= gamma <= len(tabs):
        raise ValueError(f"gamma must be in 1..{len(tabs)}")
    i, y = rat(i), rat(y)
    if not in_diagram(irrep(s), i, y):
        raise ValueError(f"(i={i}, y={y}) is not in the diagram of {irrep(s)}")
    return tabs[gamma - 1].row(i, y)


# Casimir relation -----------------------------------------------------------

def casimir_diagonal(s1, s2, s, i, y, b: HwLatticePoint) -> Fraction:
    """Diagonal coefficient of the quadratic-Casimir relation at lattice point ``b``."""
    mu, j, k = (rat(x) for x in b)
    i, y = rat(i), rat(y)
    return (casimir_f(s) - casimir_f(s1) - casimir_f(s2)
            - (i * (i + 1) - j * (j + 1) - k * (k + 1)) - F(3, 2) * mu * (y - mu))


def casimir_operator_on_row(s1, s2, i, y) -> np.ndarray:
    """Matrix of the two-factor Casimir minus (f1 + f2) on the row basis of (i, y).

    Built from the coupled doublet elements: the cross term splits into an
    isospin part, a hypercharge part and the doublet-doublet part that moves
    one unit of hypercharge between the factors.
    """
    s1, s2 = irrep(s1), irrep(s2)
    i, y = rat(i), rat(y)
    pts = row_lattice(s1, s2, i, y)
    n = len(pts)
    m = np.zeros((n, n))
    for a, (mu, j, k) in enumerate(pts):
        m[a, a] = float(i * (i + 1) - j * (j + 1) - k * (k + 1) + F(3, 2) * mu * (y - mu))
    m += _doublet_cross(s1, s2, i, y, pts)
    return m


def _doublet_cross(s1, s2, i, y, pts) -> np.ndarray:
    # Cross term sum_q (T1_q T2_q^dag + h.c.) on coupled states, from the
    # single-factor reduced elements by recoupling through an intermediate
    # coupled state at isospin i' and hypercharge y+1.
    pos = {p: n for n, p in enumerate(pts)}
    n = len(pts)
    out = np.zeros((n, n))
    for i2 in (i + HALF, i - HALF):
        if i2 < 0:
            continue
        up = row_lattice(s1, s2, i2, y + 1)
        for c, b in enumerate(pts):
            for b2 in _neighbours(b):
                if b2 not in up or b2.mu != b.mu:
                    continue
                # factor-2 raising then factor-1 lowering
                r2 = _coupled(s1, s2, y, b, i, b2, i2)
                if r2 == 0.0:
                    continue
                for b3 in pts:
                    if b3.mu + 1 != b2.mu or b3.k != b2.k:
                        continue
                    r1 = _coupled(s1, s2, y, b3, i, b2, i2)
                    if r1 == 0.0:
                        continue
                    w = (2 * i2 + 1) / (2 * i + 1)
                    out[pos[b3], c] += w * r1 * r2
    return out + out.T


def casimir_step(s1, s2, s, i, y, row) -> np.ndarray:
    """Residual of the quadratic-Casimir eigen-relation on a row.

    ``row`` is an IsoscalarRow or a mapping point -> value.  The result is
    indexed like ``row_lattice(s1, s2, i, y)`` and vanishes for a genuine
    row of ``s``.
    """
    s1, s2, s = irrep(s1), irrep(s2), irrep(s)
    i, y = rat(i), rat(y)
    pts = row_lattice(s1, s2, i, y)
    vals = row.as_dict() if isinstance(row, IsoscalarRow) else {HwLatticePoint(*p): v for p, v in row.items()}
    vec = np.array([vals.get(p, 0.0) for p in pts])
    shift = float(casimir_f(s) - casimir_f(s1) - casimir_f(s2))
    m = casimir_operator_on_row(s1, s2, i, y)
    return m @ vec - shift * vec


# closed forms ------------------------------------------------------------

def _fact_ratio(num: Sequence[Fraction], den: Sequence[Fraction]) -> Optional[Fraction]:
    if any(x < 0 for x in list(num) + list(den)):
        return None
    p = 1
    for x in num:
        p *= ifact(x)
    q = 1
    for x in den:
        q *= ifact(x)
    return F(p, q)


def pq_mu_window(P: int, Q: int, i, y) -> Tuple[Fraction, Fraction]:
    i, y = rat(i), rat(y)
    hi = min(F(P, 3), y + F(Q, 3))
    lo = max(i + y / 2 - F(P + Q, 3), y - F(2 * Q, 3), -F(2 * P, 3))
    return lo, hi


def closed_form_pq(P: int, Q: int, i, y, mu) -> Surd:
    """Factor of D(P,0) x D(0,Q) -> D(P,Q) at (i, y); j and k follow from mu."""
    i, y, mu = rat(i), rat(y), rat(mu)
    if not in_diagram(Irrep(P, Q), i, y):
        return Surd.zero()
    lo, hi = pq_mu_window(P, Q, i, y)
    if not (lo <= mu <= hi) or (F(P, 3) - mu).denominator != 1:
        return Surd.zero()
    a, b = F(2 * P + Q, 3), F(P + 2 * Q, 3)
    c = F(P + Q, 3)
    num = [b + i + y / 2 + 1, b - i + y / 2, a - i - y / 2, a + i - y / 2 + 1]
    den = [F(P + Q + 1), c + i - y / 2 + 1 + mu, c - i - y / 2 + mu, F(P, 3) - mu, F(Q, 3) + y - mu]
    r = _fact_ratio(num, den)
    return Surd.zero() if r is None else Surd.sqrt(r)


def pq_point(P: int, Q: int, y, mu) -> HwLatticePoint:
    y, mu = rat(y), rat(mu)
    return HwLatticePoint(mu, F(P, 3) + mu / 2, F(Q, 3) - (y - mu) / 2)


def closed_form_pp(P1: int, P2: int, y, mu) -> Surd:
    """Factor of D(P1,0) x D(P2,0) -> D(P1+P2,0) at hypercharge y."""
    y, mu = rat(y), rat(mu)
    num = [F(P1), F(P2), F(P1 + P2, 3) - y, F(2 * (P1 + P2), 3) + y]
    den = [F(P1 + P2), F(P1, 3) - mu, F(2 * P2, 3) + y - mu, F(2 * P1, 3) + mu, F(P2, 3) - y + mu]
    if any(x.denominator != 1 for x in num + den):
        return Surd.zero()
    r = _fact_ratio(num, den)
    return Surd.zero() if r is None else Surd.sqrt(r)


def closed_form_qq(Q1: int, Q2: int, y, mu) -> Surd:
    """Factor of D(0,Q1) x D(0,Q2) -> D(0,Q1+Q2), by reflection of the (P,0) case."""
    return closed_form_pp(Q1, Q2, -rat(y), -rat(mu))


def pp_isospin(P1: int, P2: int, y) -> Fraction:
    return F(P1 + P2, 3) + rat(y) / 2


def scalar_factors(P: int, Q: int, mu, j) -> Surd:
    """Factor of D(P,Q) x D(Q,P) -> D(0,0) at lattice point (mu, j, j)."""
    mu, j = rat(mu), rat(j)
    if j not in i_values(Irrep(P, Q), mu) or j not in i_values(Irrep(Q, P), -mu):
        return Surd.zero()
    mag = F(2 * (2 * j + 1), (P + 1) * (Q + 1) * (P + Q + 2))
    # relative to the maximal-j factor at mu = (P-Q)/3, j = (P+Q)/2
    jmax, mumax = F(P + Q, 2), F(P - Q, 3)
    return Surd.sqrt(mag, sign_power((jmax + mumax / 2) - (j + mu / 2)))


def conjugation_phase(s: Irrep, state) -> int:
    """Sign linking |Q P i -i3 -y> to the complex conjugate of |P Q i i3 y>."""
    from .core import triality

    if hasattr(state, "i3"):
        i3, y = state.i3, state.y
    else:
        _, i3, y = state
    t = triality(irrep(s))
    return sign_power(F(t, 3) + rat(i3) + rat(y) / 2)


def clear_cache() -> None:
    with _LOCK:
        _TABLES.clear()
