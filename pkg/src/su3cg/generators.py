"""Matrix elements of the su(3) generators on the canonical basis of V(P, Q).

Conventions: ``K+`` and ``L+`` raise y by one and shift i3 by +1/2 and
-1/2 respectively.  Matrix elements of I+- and K+- are non-negative.
Matrices are real, so each lowering operator is the transpose of its
raising partner.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

import numpy as np

from .core import Irrep, State, enumerate_basis, in_diagram, in_lattice, irrep
from .exact import Surd, rat

F = Fraction
HALF = F(1, 2)

OPERATORS = ("I3", "Y", "I+", "I-", "K+", "K-", "L+", "L-")


class OutsideDiagram(ValueError):
    """(i, y) is not a node of the irrep's weight diagram."""


def isospin_ladder(i, i3) -> Surd:
    """Element of I- taking |i, i3> to |i, i3-1>."""
    i, i3 = rat(i), rat(i3)
    if abs(i3) > i:
        raise ValueError(f"|i3| > i for i={i}, i3={i3}")
    return Surd.sqrt(i * (i + 1) - i3 * (i3 - 1))


def zw_squared(s: Irrep, i, y) -> Tuple[Fraction, Fraction]:
    """The line invariants z^2 and w^2 at the node (i, y)."""
    P, Q = s
    i, y = rat(i), rat(y)
    if not in_diagram(s, i, y):
        raise OutsideDiagram(f"(i={i}, y={y}) not in diagram of {irrep(s)}")
    a, b = F(2 * P + Q, 3), F(P + 2 * Q, 3)
    d = F(P - Q, 3)
    z2 = (a - i - y / 2) * (b + i + y / 2 + 2) * (d + i + y / 2 + 1)
    w2 = (-d + i - y / 2) * (b - i + y / 2 + 1) * (a + i - y / 2 + 1)
    return z2, w2


@lru_cache(maxsize=None)
def chi_kappa(s: Irrep, i, y) -> Tuple[Surd, Surd]:
    """Reduced elements chi and kappa at (i, y); both non-negative."""
    i, y = rat(i), rat(y)
    z2, w2 = zw_squared(s, i, y)
    chi = Surd.sqrt(z2 / (2 * (i + 1)))
    kappa = Surd.zero() if i == 0 else Surd.sqrt(w2 / (2 * i + 1))
    return chi, kappa


def _chi(s, i, y) -> Surd:
    return chi_kappa(s, i, y)[0] if in_diagram(s, i, y) else Surd.zero()


def _kappa(s, i, y) -> Surd:
    return chi_kappa(s, i, y)[1] if in_diagram(s, i, y) else Surd.zero()


@dataclass(frozen=True)
class LadderCoefficients:
    """Coefficients of K+- (a, b) and L+- (c, d) on one canonical state.

    ``a`` and ``c`` lead to isospin i+1/2, ``b`` and ``d`` to i-1/2.
    """

    a_plus: Surd
    b_plus: Surd
    c_plus: Surd
    d_plus: Surd
    a_minus: Surd
    b_minus: Surd
    c_minus: Surd
    d_minus: Surd

    def targets(self, st: State) -> Dict[str, Tuple[Fraction, Fraction, Fraction]]:
        i, i3, y = st.i, st.i3, st.y
        return {
            "a_plus": (i + HALF, i3 + HALF, y + 1),
            "b_plus": (i - HALF, i3 + HALF, y + 1),
            "c_plus": (i + HALF, i3 - HALF, y + 1),
            "d_plus": (i - HALF, i3 - HALF, y + 1),
            "a_minus": (i + HALF, i3 - HALF, y - 1),
            "b_minus": (i - HALF, i3 - HALF, y - 1),
            "c_minus": (i + HALF, i3 + HALF, y - 1),
            "d_minus": (i - HALF, i3 + HALF, y - 1),
        }


def _ratio(num: Fraction, den: Fraction) -> Surd:
    if num == 0:
        return Surd.zero()
    return Surd.sqrt(num / den)


def _raw_coefficients(s: Irrep, i, i3, y) -> LadderCoefficients:
    chi, kap = chi_kappa(s, i, y)
    a_p = _ratio(i + i3 + 1, 2 * i + 1) * chi
    c_p = _ratio(i - i3 + 1, 2 * i + 1) * chi
    if i == 0:
        b_p = d_p = Surd.zero()
    else:
        b_p = _ratio(i - i3, 2 * i) * kap
        d_p = -(_ratio(i + i3, 2 * i) * kap)
    ku = _kappa(s, i + HALF, y - 1)
    cd = _chi(s, i - HALF, y - 1) if i > 0 else Surd.zero()
    a_m = _ratio(i - i3 + 1, 2 * i + 1) * ku
    c_m = -(_ratio(i + i3 + 1, 2 * i + 1) * ku)
    if i == 0:
        b_m = d_m = Surd.zero()
    else:
        b_m = _ratio(i + i3, 2 * i) * cd
        d_m = _ratio(i - i3, 2 * i) * cd
    return LadderCoefficients(a_p, b_p, c_p, d_p, a_m, b_m, c_m, d_m)


@lru_cache(maxsize=None)
def ladder_coefficients(state: State) -> LadderCoefficients:
    """a+-, b+-, c+-, d+- on ``state``; zero whenever the target leaves the lattice."""
    s = irrep(state.irrep)
    i, i3, y = rat(state.i), rat(state.i3), rat(state.y)
    if not in_lattice(s, i, i3, y):
        raise OutsideDiagram(f"{state} is not a canonical state")
    raw = _raw_coefficients(s, i, i3, y)
    tg = raw.targets(State(s, i, i3, y))
    vals = {name: getattr(raw, name) for name in tg}
    for name, t in tg.items():
        if not in_lattice(s, *t):
            vals[name] = Surd.zero()
    return LadderCoefficients(**vals)


class SparseMatrix:
    """Square matrix with exact entries, stored by (row, col)."""

    def __init__(self, n: int, entries: Dict[Tuple[int, int], Surd] | None = None):
        self.n = n
        self.entries: Dict[Tuple[int, int], Surd] = {}
        for k, v in (entries or {}).items():
            if not v.is_zero():
                self.entries[k] = v

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.n, {(c, r): v for (r, c), v in self.entries.items()})

    def triplets(self) -> Iterator[Tuple[int, int, Surd]]:
        for (r, c) in sorted(self.entries, key=lambda rc: (rc[1], rc[0])):
            yield r, c, self.entries[(r, c)]

    def column_counts(self) -> List[int]:
        counts = [0] * self.n
        for _, c in self.entries:
            counts[c] += 1
        return counts

    def to_dense(self) -> np.ndarray:
        m = np.zeros((self.n, self.n))
        for (r, c), v in self.entries.items():
            m[r, c] = float(v)
        return m

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class GeneratorMatrixSet:
    irrep: Irrep
    states: Tuple[State, ...]
    matrices: Dict[str, SparseMatrix]

    def __getitem__(self, op: str) -> SparseMatrix:
        return self.matrices[op]

    def dense(self) -> Dict[str, np.ndarray]:
        return {k: v.to_dense() for k, v in self.matrices.items()}


@lru_cache(maxsize=64)
def _build(s: Irrep) -> GeneratorMatrixSet:
    lat = enumerate_basis(s)
    idx = lat.index()
    n = len(lat.states)
    i3m: Dict[Tuple[int, int], Surd] = {}
    ym: Dict[Tuple[int, int], Surd] = {}
    ip: Dict[Tuple[int, int], Surd] = {}
    kp: Dict[Tuple[int, int], Surd] = {}
    lp: Dict[Tuple[int, int], Surd] = {}
    for col, st in enumerate(lat.states):
        i3m[(col, col)] = Surd.from_rational(st.i3)
        ym[(col, col)] = Surd.from_rational(st.y)
        if st.i3 < st.i:
            # I+ is the transpose of I-: element B(i, i3+1)
            ip[(idx[(st.i, st.i3 + 1, st.y)], col)] = isospin_ladder(st.i, st.i3 + 1)
        lc = ladder_coefficients(st)
        tg = lc.targets(st)
        for name, store in (("a_plus", kp), ("b_plus", kp), ("c_plus", lp), ("d_plus", lp)):
            v = getattr(lc, name)
            if not v.is_zero():
                store[(idx[tg[name]], col)] = v
    mats = {
        "I3": SparseMatrix(n, i3m),
        "Y": SparseMatrix(n, ym),
        "I+": SparseMatrix(n, ip),
        "K+": SparseMatrix(n, kp),
        "L+": SparseMatrix(n, lp),
    }
    for op in ("I", "K", "L"):
        mats[op + "-"] = mats[op + "+"].transpose()
    return GeneratorMatrixSet(s, lat.states, {k: mats[k] for k in OPERATORS})


def build_generator_matrices(s: Irrep) -> GeneratorMatrixSet:
    return _build(irrep(s))


def a_operators(mats: Dict[str, np.ndarray]) -> List[List[np.ndarray]]:
    """The nine operators A^i_k (i, k = 0..2) from dense generator matrices."""
    I3, Y = mats["I3"], mats["Y"]
    return [
        [I3 + Y / 2, mats["I+"], mats["K+"]],
        [mats["I-"], -I3 + Y / 2, mats["L+"]],
        [mats["K-"], mats["L-"], -Y],
    ]


def casimir_matrix(mats: Dict[str, np.ndarray]) -> np.ndarray:
    """Quadratic Casimir (1/2) sum A^i_k A^k_i."""
    A = a_operators(mats)
    return 0.5 * sum(A[i][k] @ A[k][i] for i in range(3) for k in range(3))


def cubic_casimir_matrix(mats: Dict[str, np.ndarray]) -> np.ndarray:
    """Cubic Casimir (1/2) sum (A^i_l A^k_i A^l_k + A^l_i A^i_k A^k_l)."""
    A = a_operators(mats)
    r = range(3)
    return 0.5 * sum(
        A[i][l] @ A[k][i] @ A[l][k] + A[l][i] @ A[i][k] @ A[k][l] for i in r for k in r for l in r
    )


# fundamental realization -------------------------------------------------

_S3 = np.sqrt(3.0)


def gell_mann() -> List[np.ndarray]:
    """The eight Gell-Mann matrices lambda_1 .. lambda_8 (index 0 unused: None)."""
    lam = [None] + [np.zeros((3, 3), dtype=complex) for _ in range(8)]
    lam[1][0, 1] = lam[1][1, 0] = 1
    lam[2][0, 1], lam[2][1, 0] = -1j, 1j
    lam[3][0, 0], lam[3][1, 1] = 1, -1
    lam[4][0, 2] = lam[4][2, 0] = 1
    lam[5][0, 2], lam[5][2, 0] = -1j, 1j
    lam[6][1, 2] = lam[6][2, 1] = 1
    lam[7][1, 2], lam[7][2, 1] = -1j, 1j
    lam[8][0, 0] = lam[8][1, 1] = 1 / _S3
    lam[8][2, 2] = -2 / _S3
    return lam


def _antisym(table: Dict[Tuple[int, int, int], Surd]) -> Dict[Tuple[int, int, int], Surd]:
    out = {}
    for (a, b, c), v in table.items():
        for p, sg in (((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
                      ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1)):
            out[p] = v if sg > 0 else -v
    return out


def _sym(table: Dict[Tuple[int, int, int], Surd]) -> Dict[Tuple[int, int, int], Surd]:
    out = {}
    for (a, b, c), v in table.items():
        for p in ((a, b, c), (b, c, a), (c, a, b), (b, a, c), (a, c, b), (c, b, a)):
            out[p] = v
    return out


def structure_constants() -> Tuple[Dict[Tuple[int, int, int], Surd], Dict[Tuple[int, int, int], Surd]]:
    """Sparse tables (f, d), extended to all index permutations."""
    h = Surd.from_rational(HALF)
    r3_2 = Surd.sqrt(F(3, 4))
    f = {(1, 2, 3): Surd.one(), (4, 5, 8): r3_2, (6, 7, 8): r3_2,
         (1, 4, 7): h, (2, 4, 6): h, (3, 4, 5): h, (2, 5, 7): h,
         (1, 5, 6): -h, (3, 6, 7): -h}
    inv_r3 = Surd.sqrt(F(1, 3))
    inv_2r3 = Surd.sqrt(F(1, 12))
    d = {(1, 1, 8): inv_r3, (2, 2, 8): inv_r3, (3, 3, 8): inv_r3, (8, 8, 8): -inv_r3,
         (4, 4, 8): -inv_2r3, (5, 5, 8): -inv_2r3, (6, 6, 8): -inv_2r3, (7, 7, 8): -inv_2r3,
         (1, 4, 6): h, (1, 5, 7): h, (2, 5, 6): h, (3, 4, 4): h, (3, 5, 5): h,
         (2, 4, 7): -h, (3, 6, 6): -h, (3, 7, 7): -h}
    return _antisym(f), _sym(d)


def fundamental_ladders() -> Dict[str, np.ndarray]:
    """I+-, K+-, L+-, I3, Y on V(1,0) from the Gell-Mann matrices, basis x1, x2, x3."""
    lam = gell_mann()
    Fk = [None] + [m / 2 for m in lam[1:]]
    out = {
        "I+": Fk[1] + 1j * Fk[2], "I-": Fk[1] - 1j * Fk[2],
        "K+": Fk[4] + 1j * Fk[5], "K-": Fk[4] - 1j * Fk[5],
        "L+": Fk[6] + 1j * Fk[7], "L-": Fk[6] - 1j * Fk[7],
        "I3": Fk[3], "Y": 2 / _S3 * Fk[8],
    }
    return {k: v.real.copy() for k, v in out.items()}


def conjugate_triplet_raw() -> Dict[str, np.ndarray]:
    """Generators on y^k = x_k^*, via A^i_k -> -A^k_i (before any phase fix).

    Basis order matches the canonical (0,1) ordering: y^3, y^2, y^1.
    """
    fund = fundamental_ladders()
    A = a_operators(fund)
    B = [[-A[k][i] for k in range(3)] for i in range(3)]
    # (0,1) canonical order by weight: y^3 (y=2/3), y^2 (i3=1/2), y^1 (i3=-1/2)
    perm = [2, 1, 0]
    Pm = np.eye(3)[:, perm]

    def conj(m):
        return Pm.T @ m @ Pm

    ops = {
        "I+": B[0][1], "I-": B[1][0], "K+": B[0][2], "K-": B[2][0],
        "L+": B[1][2], "L-": B[2][1],
        "I3": (B[0][0] - B[1][1]) / 2, "Y": -B[2][2],
    }
    return {k: conj(v) for k, v in ops.items()}


def conjugate_triplet_phase() -> np.ndarray:
    """Diagonal G restoring the phase convention: eta_1 = -y^1, others unchanged."""
    return np.diag([1.0, 1.0, -1.0])
