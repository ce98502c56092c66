"""Brute-force reduction of V(s1) x V(s2) by dense linear algebra.

Nothing here uses isoscalar factors or recurrences: the coupled generators
are Kronecker sums of the single-irrep matrices, highest-weight vectors are
null vectors of the raising operators, and irreps are generated by
lowering.  Only the overall sign of each highest-weight vector is fixed by
convention, so signed results can be compared with the recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .core import Irrep, State, conjugate, enumerate_basis, irrep, iy_nodes, top_point
from .exact import rat, sign_power
from .generators import OPERATORS, build_generator_matrices, casimir_matrix, cubic_casimir_matrix, a_operators
from .isoscalar import conjugation_phase
from .series import multiplicity
from .su2 import cg

F = Fraction
HALF = F(1, 2)
DEFAULT_CAP = 2000
SVD_RTOL = 1e-8


class CapExceeded(ValueError):
    pass


class DimensionMismatch(RuntimeError):
    pass


class DegenerateLabeling(RuntimeError):
    pass


@dataclass
class ProductSpace:
    s1: Irrep
    s2: Irrep
    basis: List[Tuple[State, State]]
    ops: Dict[str, np.ndarray]
    ops1: Dict[str, np.ndarray]
    ops2: Dict[str, np.ndarray]
    i3: np.ndarray
    y: np.ndarray
    _isq: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def casimir(self) -> np.ndarray:
        return casimir_matrix(self.ops)

    def cubic_casimir(self) -> np.ndarray:
        return cubic_casimir_matrix(self.ops)

    def isospin_sq(self) -> np.ndarray:
        if self._isq is None:
            o = self.ops
            self._isq = 0.5 * (o["I+"] @ o["I-"] + o["I-"] @ o["I+"]) + o["I3"] @ o["I3"]
        return self._isq


def build_product(s1, s2, cap: int = DEFAULT_CAP) -> ProductSpace:
    s1, s2 = irrep(s1), irrep(s2)
    g1 = build_generator_matrices(s1).dense()
    g2 = build_generator_matrices(s2).dense()
    n1, n2 = len(g1["Y"]), len(g2["Y"])
    if n1 * n2 > cap:
        raise CapExceeded(f"product dimension {n1 * n2} exceeds cap {cap}")
    e1, e2 = np.eye(n1), np.eye(n2)
    ops = {op: np.kron(g1[op], e2) + np.kron(e1, g2[op]) for op in OPERATORS}
    st1, st2 = enumerate_basis(s1).states, enumerate_basis(s2).states
    basis = [(a, b) for a in st1 for b in st2]
    i3 = np.array([float(a.i3 + b.i3) for a, b in basis])
    y = np.array([float(a.y + b.y) for a, b in basis])
    return ProductSpace(s1, s2, basis, ops, g1, g2, i3, y)


def _weight_columns(ps: ProductSpace, i3, y) -> np.ndarray:
    return np.where((np.abs(ps.i3 - float(i3)) < 1e-9) & (np.abs(ps.y - float(y)) < 1e-9))[0]


def _null(a: np.ndarray) -> np.ndarray:
    _, sv, vt = np.linalg.svd(a)
    scale = sv[0] if sv.size and sv[0] > 0 else 1.0
    rank = int(np.sum(sv > SVD_RTOL * scale))
    return vt[rank:].T


def highest_weight_subspace(ps: ProductSpace, s) -> np.ndarray:
    """Orthonormal columns spanning vectors of weight top(s) killed by I+, K+, L+."""
    s = irrep(s)
    i, y = top_point(s)
    cols = _weight_columns(ps, i, y)
    expected = multiplicity(ps.s1, ps.s2, s)
    if cols.size == 0:
        basis = np.zeros((ps.dim, 0))
    else:
        stacked = np.vstack([ps.ops[op][:, cols] for op in ("I+", "K+", "L+")])
        ns = _null(stacked)
        basis = np.zeros((ps.dim, ns.shape[1]))
        basis[cols, :] = ns
    if basis.shape[1] != expected:
        raise DimensionMismatch(f"{s}: highest-weight space {basis.shape[1]}, series says {expected}")
    return basis


def _orthonormalize(vectors: List[np.ndarray], existing: List[np.ndarray]) -> List[np.ndarray]:
    """Orthonormal basis of span(vectors) orthogonal to ``existing`` (itself orthonormal)."""
    if not vectors:
        return []
    r = np.array(vectors).T
    if existing:
        b = np.array(existing).T
        for _ in range(2):  # second pass refines
            r = r - b @ (b.T @ r)
    u, sv, _ = np.linalg.svd(r, full_matrices=False)
    return list(u[:, sv > 1e-8].T)


def span_irrep(ps: ProductSpace, hw: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the smallest invariant subspace containing ``hw``."""
    basis = _orthonormalize([hw], [])
    frontier = list(basis)
    while frontier:
        new = []
        for v in frontier:
            for op in ("I-", "K-", "L-"):
                w = ps.ops[op] @ v
                if np.linalg.norm(w) > 1e-10:
                    new.append(w)
        frontier = _orthonormalize(new, basis)
        basis += frontier
    return np.array(basis).T


def generate_irrep(ps: ProductSpace, hw: np.ndarray, s) -> Dict[State, np.ndarray]:
    """Canonically labelled and phased basis of the irrep generated from ``hw``."""
    s = irrep(s)
    sub = span_irrep(ps, hw)
    lat = enumerate_basis(s)
    if sub.shape[1] != len(lat):
        raise DegenerateLabeling(f"generated {sub.shape[1]} vectors, irrep {s} has {len(lat)}")
    isq = ps.isospin_sq()
    vecs: Dict[State, np.ndarray] = {}
    for (i3, y), ivals in lat.multiplicity_index.items():
        # restrict to the weight space inside the irrep
        mask = (np.abs(ps.i3 - float(i3)) < 1e-9) & (np.abs(ps.y - float(y)) < 1e-9)
        proj = sub[mask].T @ sub[mask]
        ev, u = np.linalg.eigh(proj)
        wsp = sub @ u[:, ev > 0.5]
        if wsp.shape[1] != len(ivals):
            raise DegenerateLabeling(f"weight ({i3},{y}) has {wsp.shape[1]} vectors, expected {len(ivals)}")
        m = wsp.T @ isq @ wsp
        ev, u = np.linalg.eigh((m + m.T) / 2)
        found = sorted(zip(ev, u.T), key=lambda t: t[0])
        want = sorted(ivals)
        for (val, w), i in zip(found, want):
            if abs(val - float(i * (i + 1))) > 1e-7:
                raise DegenerateLabeling(f"I^2 eigenvalue {val} where i={i} expected")
            vecs[State(s, i, i3, y)] = wsp @ w
    _fix_phases(ps, s, vecs, hw)
    return vecs


def _fix_phases(ps: ProductSpace, s: Irrep, vecs: Dict[State, np.ndarray], hw: np.ndarray) -> None:
    from .generators import ladder_coefficients

    ti, ty = top_point(s)
    top = State(s, ti, ti, ty)
    if np.dot(vecs[top], hw) < 0:
        vecs[top] = -vecs[top]
    P, Q = s
    for i, y in iy_nodes(s):
        st = State(s, i, i, y)
        if st != top:
            # reach the stretched state from the row above, as the recurrence does
            on_nu = i == F(P - Q, 3) + y / 2
            if not on_nu and i > 0 and State(s, i - HALF, i - HALF, y + 1) in vecs:
                op, src, name = "L+", State(s, i - HALF, i - HALF, y + 1), "d_plus"
            else:
                op, src, name = "K+", State(s, i + HALF, i + HALF, y + 1), "a_plus"
            want = float(getattr(ladder_coefficients(st), name))
            got = float(vecs[src] @ ps.ops[op] @ vecs[st])
            if abs(want) < 1e-12:
                raise DegenerateLabeling(f"no phase link into {st}")
            if got * want < 0:
                vecs[st] = -vecs[st]
        i3 = i
        while i3 > -i:
            hi, lo = State(s, i, i3, y), State(s, i, i3 - 1, y)
            if vecs[lo] @ ps.ops["I-"] @ vecs[hi] < 0:
                vecs[lo] = -vecs[lo]
            i3 -= 1


def extract_cgc(ps: ProductSpace, irrep_basis: Dict[State, np.ndarray]) -> Dict[State, Dict[Tuple[State, State], float]]:
    """Overlaps <product basis | coupled state>, dropping entries below 1e-13."""
    out = {}
    for st, v in irrep_basis.items():
        out[st] = {ps.basis[n]: float(x) for n, x in enumerate(v) if abs(x) > 1e-13}
    return out


def moshinsky_x(ps: ProductSpace) -> np.ndarray:
    """Cubic operator (1/2) sum (A1^i_k A1^j_i A2^k_j + A1^i_k A1^k_j A2^j_i)."""
    n1, n2 = len(ps.ops1["Y"]), len(ps.ops2["Y"])
    e1, e2 = np.eye(n1), np.eye(n2)
    A1 = [[np.kron(m, e2) for m in row] for row in a_operators(ps.ops1)]
    A2 = [[np.kron(e1, m) for m in row] for row in a_operators(ps.ops2)]
    r = range(3)
    x = np.zeros((ps.dim, ps.dim))
    for i in r:
        for j in r:
            for k in r:
                x += A1[i][k] @ A1[j][i] @ A2[k][j] + A1[i][k] @ A1[k][j] @ A2[j][i]
    return 0.5 * x


# sign conventions ------------------------------------------------------------

def _hw_factors(ps: ProductSpace, s: Irrep, v: np.ndarray) -> Dict[Tuple[Fraction, Fraction, Fraction], float]:
    """Isoscalar factors of a top vector, by projecting on coupled isospin states."""
    i, y = top_point(s)
    pos = {(a.key(), b.key()): n for n, (a, b) in enumerate(ps.basis)}
    out = {}
    for mu in {a.y for a, _ in ps.basis}:
        js = sorted({a.i for a, _ in ps.basis if a.y == mu})
        ks = sorted({b.i for _, b in ps.basis if b.y == y - mu})
        for j in js:
            for k in ks:
                if not (abs(j - k) <= i <= j + k):
                    continue
                tot = 0.0
                m = j
                while m >= -j:
                    m2 = i - m
                    n = pos.get(((j, m, mu), (k, m2, y - mu)))
                    if n is not None:
                        tot += float(cg(j, m, k, m2, i, i)) * v[n]
                    m -= 1
                if abs(tot) > 1e-9:
                    out[(mu, j, k)] = tot
    return out


def signed_top_vector(ps: ProductSpace, s) -> np.ndarray:
    """Top vector of a multiplicity-free ``s``, sign fixed by the shared convention.

    The largest-j factor (then largest k, then largest mu) is positive.  When
    both factors are self-conjugate and P < Q, the vector is instead the
    conjugate image of the corresponding state of conj(s).
    """
    s = irrep(s)
    s1, s2 = ps.s1, ps.s2
    if s1[0] == s1[1] and s2[0] == s2[1] and s[0] < s[1]:
        return _conjugated_top(ps, s)
    w = highest_weight_subspace(ps, s)[:, 0]
    f = _hw_factors(ps, s, w)
    lead = max(f, key=lambda t: (t[1], t[2], t[0]))
    return w if f[lead] > 0 else -w


def _conjugation_matrix(ps: ProductSpace) -> np.ndarray:
    """Antiunitary conjugation on the product of two self-conjugate irreps, as a real matrix.

    Each factor maps |i i3 y> to phase * |i -i3 -y> with the sign that links
    conjugate canonical states.
    """
    pos = {(a.key(), b.key()): n for n, (a, b) in enumerate(ps.basis)}
    c = np.zeros((ps.dim, ps.dim))
    for n, (a, b) in enumerate(ps.basis):
        # |a>* = ph(a) |a-bar>, where |Q P i -i3 -y> = ph |P Q i i3 y>*
        pa = conjugation_phase(ps.s1, a)
        pb = conjugation_phase(ps.s2, b)
        m = pos[((a.i, -a.i3, -a.y), (b.i, -b.i3, -b.y))]
        c[m, n] = pa * pb
    return c


def _conjugated_top(ps: ProductSpace, s: Irrep) -> np.ndarray:
    sc = conjugate(s)
    basis = generate_irrep(ps, signed_top_vector(ps, sc), sc)
    i, y = top_point(s)
    # the top of s is the conjugate image of the state (i, -i, -y) of conj(s)
    src = basis[State(sc, i, -i, -y)]
    ph = conjugation_phase(sc, State(sc, i, -i, -y))
    return ph * (_conjugation_matrix(ps) @ src)


def oracle_irreps(s1, s2, s) -> List[Dict[State, np.ndarray]]:
    """Labelled copies of ``s``: signed when multiplicity-free, arbitrary gamma basis otherwise."""
    ps = build_product(s1, s2)
    s = irrep(s)
    if multiplicity(ps.s1, ps.s2, s) == 1:
        return [generate_irrep(ps, signed_top_vector(ps, s), s)]
    w = highest_weight_subspace(ps, s)
    return [generate_irrep(ps, w[:, g], s) for g in range(w.shape[1])]


def state_projector(copies: List[Dict[State, np.ndarray]], st: State) -> np.ndarray:
    vs = [c[st] for c in copies]
    return sum(np.outer(v, v) for v in vs)


def products_up_to(max_dim: int, max_label: int = 8) -> List[Tuple[Irrep, Irrep]]:
    """Ordered pairs (s1, s2) with dim(s1) * dim(s2) <= max_dim."""
    from .core import dimension

    labels = [Irrep(P, Q) for P in range(max_label + 1) for Q in range(max_label + 1)]
    return [(a, b) for a in labels for b in labels if dimension(a) * dimension(b) <= max_dim]


def compare_with_recurrence(s1, s2, tol: float = 1e-9) -> Dict[str, float]:
    """Maximum deviations between oracle and recurrence coupled states of every irrep in the series."""
    from .cgc import coupled_vector, product_vector
    from .isoscalar import isoscalar_tables
    from .series import series_general

    s1, s2 = irrep(s1), irrep(s2)
    ps = build_product(s1, s2)
    signed = 0.0
    proj = 0.0
    unit = 0.0
    full = []
    for term in series_general(s1, s2):
        s = term.irrep
        if term.multiplicity == 1:
            copies = [generate_irrep(ps, signed_top_vector(ps, s), s)]
        else:
            w = highest_weight_subspace(ps, s)
            copies = [generate_irrep(ps, w[:, g], s) for g in range(w.shape[1])]
        ntab = len(isoscalar_tables(s1, s2, s))
        for st in enumerate_basis(s).states:
            rec = [product_vector(s1, s2, coupled_vector(s1, s2, s, g, st.i, st.i3, st.y)) for g in range(1, ntab + 1)]
            full += rec
            if term.multiplicity == 1:
                signed = max(signed, float(np.abs(rec[0] - copies[0][st]).max()))
            else:
                pr = sum(np.outer(v, v) for v in rec)
                proj = max(proj, float(np.abs(pr - state_projector(copies, st)).max()))
    m = np.array(full)
    unit = float(np.abs(m @ m.T - np.eye(len(full))).max()) if full else 0.0
    return {"signed": signed, "projector": proj, "unitarity": unit}
