"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest.
"""

import time
from fractions import Fraction as F

import numpy as np
import pytest

from su3cg.cgc import coupled_vector, product_vector
from su3cg.core import Irrep, dimension, enumerate_basis, iy_nodes, weight_multiplicity
from su3cg.exact import Surd
from su3cg.isoscalar import (
    HwLatticePoint,
    clear_cache,
    closed_form_pp,
    closed_form_pq,
    closed_form_qq,
    conjugation_phase,
    isoscalar_row,
    isoscalar_tables,
)
from su3cg.oracle import compare_with_recurrence, products_up_to
from su3cg.series import dimension_check, multiplicity, series_general
from su3cg.verify import casimir_residual, commutator_residual

from conftest import ACCEPTANCE_LINES

GOLDEN_TOL, GOLDEN_SECONDS = 1e-12, 1.0
CLOSED_TOL, CLOSED_SECONDS = 1e-12, 30.0
ORACLE_TOL, ORACLE_SECONDS, ORACLE_MAX_DIM = 1e-9, 300.0, 400
STRUCT_TOL = 1e-12

O = Irrep(1, 1)
h = F(1, 2)


def report(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def _row(s, gamma, i, y):
    r = isoscalar_row(O, O, s, gamma, i, y)
    return r.points, r.values, r.exact


def test_golden():
    q = Surd.from_rational
    a, b = Surd.sqrt(F(1, 20)), Surd.sqrt(F(9, 20))
    cases = [
        ("stretched (2,2)", Irrep(2, 2), 1, 1, 2, [Surd.one()]),
        ("decuplet (3,0)", Irrep(3, 0), 1, F(3, 2), 1, [Surd.sqrt(h), Surd.sqrt(h, -1)]),
        ("antidecuplet (0,3)", Irrep(0, 3), 1, 0, 2, [Surd(-1, F(1))]),
        ("octet gamma=1", O, 1, h, 1, [q(-h), q(h), q(h), q(h)]),
        ("octet gamma=2", O, 2, h, 1, [-a, -b, -a, b]),
    ]
    singlet = {HwLatticePoint(F(0), F(1), F(1)): Surd.sqrt(F(3, 8)),
               HwLatticePoint(F(-1), h, h): q(-h),
               HwLatticePoint(F(0), F(0), F(0)): Surd.sqrt(F(1, 8), -1),
               HwLatticePoint(F(1), h, h): q(h)}
    clear_cache()
    t0 = time.perf_counter()
    worst, exact_ok = 0.0, True
    for _, s, g, i, y, want in cases:
        _, vals, ex = _row(s, g, i, y)
        worst = max(worst, float(np.abs(vals - [float(w) for w in want]).max()))
        exact_ok &= ex is not None and list(ex) == want
    pts, vals, ex = _row(Irrep(0, 0), 1, 0, 0)
    got = dict(zip(pts, ex))
    exact_ok &= got == singlet
    worst = max(worst, max(abs(v - float(singlet[p])) for p, v in zip(pts, vals)))
    # the two octet copies must span the same plane as the reference pair
    ref = np.array([[float(x) for x in cases[3][5]], [float(x) for x in cases[4][5]]])
    mine = np.array([_row(O, g, h, 1)[1] for g in (1, 2)])
    proj = float(np.abs(ref.T @ ref - mine.T @ mine).max())
    dt = time.perf_counter() - t0
    ok = exact_ok and worst <= GOLDEN_TOL and proj <= GOLDEN_TOL and dt < GOLDEN_SECONDS
    assert report("golden values", ok,
                  f"surd-exact={exact_ok} max_dev={worst:.1e} octet_projector_dev={proj:.1e} "
                  f"time={dt:.2f}s (tol {GOLDEN_TOL:g}, limit {GOLDEN_SECONDS:g}s)")


def test_closed_form_vs_recurrence():
    t0 = time.perf_counter()
    worst, n = 0.0, 0
    for P in range(5):
        for Q in range(5):
            tab = isoscalar_tables(Irrep(P, 0), Irrep(0, Q), Irrep(P, Q))[0]
            for (i, y), row in tab.rows.items():
                for p, v in row.as_dict().items():
                    worst = max(worst, abs(v - float(closed_form_pq(P, Q, i, y, p.mu))))
                    n += 1
    dt = time.perf_counter() - t0
    ok = worst <= CLOSED_TOL and dt < CLOSED_SECONDS
    assert report("closed form vs recurrence", ok,
                  f"{n} factors, max_dev={worst:.1e} time={dt:.2f}s (tol {CLOSED_TOL:g}, limit {CLOSED_SECONDS:g}s)")


def test_oracle_equivalence():
    t0 = time.perf_counter()
    pairs = products_up_to(ORACLE_MAX_DIM)
    worst = {"signed": 0.0, "projector": 0.0, "unitarity": 0.0}
    for s1, s2 in pairs:
        r = compare_with_recurrence(s1, s2)
        for k in worst:
            worst[k] = max(worst[k], r[k])
    dt = time.perf_counter() - t0
    ok = max(worst.values()) <= ORACLE_TOL and dt < ORACLE_SECONDS
    assert report("oracle equivalence", ok,
                  f"{len(pairs)} products, signed={worst['signed']:.1e} projector={worst['projector']:.1e} "
                  f"time={dt:.1f}s (tol {ORACLE_TOL:g}, limit {ORACLE_SECONDS:g}s)")


def test_structural_invariants():
    labels3 = [Irrep(a, b) for a in range(4) for b in range(4)]
    sum_rule = all(dimension_check(a, b) for a in labels3 for b in labels3)
    comm = max(commutator_residual(P, Q) for P in range(5) for Q in range(5))
    cas = max(casimir_residual(P, Q) for P in range(5) for Q in range(5))
    norm, unit = 0.0, 0.0
    for s1, s2 in products_up_to(ORACLE_MAX_DIM):
        full = []
        for term in series_general(s1, s2):
            tabs = isoscalar_tables(s1, s2, term.irrep)
            for t in tabs:
                norm = max(norm, max(abs(r.norm() - 1) for r in t.rows.values()))
            for st in enumerate_basis(term.irrep).states:
                for g in range(1, len(tabs) + 1):
                    full.append(product_vector(s1, s2, coupled_vector(s1, s2, term.irrep, g, st.i, st.i3, st.y)))
        m = np.array(full)
        unit = max(unit, float(np.abs(m @ m.T - np.eye(len(full))).max()))
    ok = sum_rule and max(comm, cas, norm, unit) <= STRUCT_TOL
    assert report("structural invariants", ok,
                  f"sum_rule={sum_rule} commutators={comm:.1e} casimir={cas:.1e} row_norm={norm:.1e} "
                  f"block_unitarity={unit:.1e} (tol {STRUCT_TOL:g})")


def test_weight_bookkeeping():
    count_ok = all(
        sum(weight_multiplicity(Irrep(P, Q), w) for w in {(s.i3, s.y) for s in enumerate_basis(Irrep(P, Q)).states})
        == dimension(Irrep(P, Q))
        for P in range(9) for Q in range(9)
    )
    centre = weight_multiplicity(O, (0, 0))
    diag = [multiplicity(Irrep(P, P), Irrep(P, P), Irrep(P, P)) for P in range(4)]
    ok = count_ok and centre == 2 and diag == [1, 2, 3, 4]
    assert report("weight bookkeeping", ok, f"sum=dimension for P,Q<=8: {count_ok}; octet centre={centre}; "
                  f"mult of D(P,P) in D(P,P)xD(P,P), P=0..3: {diag}")


def test_symmetry_relations():
    sym_ok = True
    for P in range(5):
        for Q in range(5):
            for i, y in iy_nodes(Irrep(P, Q)):
                for n in range(P + Q + 2):
                    mu = F(P, 3) - n
                    sym_ok &= closed_form_pq(P, Q, i, y, mu) == closed_form_pq(Q, P, i, -y, mu - y)
    phase = conjugation_phase(Irrep(3, 0), (0, 0, -2))
    bottom = isoscalar_row(O, O, Irrep(3, 0), 1, 0, -2).exact
    top03 = isoscalar_row(O, O, Irrep(0, 3), 1, 0, 2).exact
    conj_ok = phase == -1 and bottom == (Surd.one(),) and top03 == (Surd(-1, F(1)),)
    refl_ok = True
    for Q1 in range(1, 8):
        for Q2 in range(1, 9 - Q1):
            tab = isoscalar_tables(Irrep(0, Q1), Irrep(0, Q2), Irrep(0, Q1 + Q2))[0]
            for (i, y), row in tab.rows.items():
                for p, e in zip(row.points, row.exact or ()):
                    refl_ok &= e == closed_form_qq(Q1, Q2, y, p.mu) == closed_form_pp(Q1, Q2, -y, -p.mu)
                refl_ok &= row.exact is not None
    ok = sym_ok and conj_ok and refl_ok
    assert report("symmetry relations", ok, f"(P,Q)<->(Q,P) exact for P,Q<=4: {sym_ok}; "
                  f"conjugation phase {phase:+d} gives antidecuplet top {top03[0]}: {conj_ok}; "
                  f"qq<->pp reflection exact for sums<=8: {refl_ok}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
