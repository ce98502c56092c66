"""Self-checks exposed through ``su3cg verify``.

Each suite returns a :class:`SuiteResult` with the worst residual found.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from .core import casimir_f, casimir_g, dimension, iy_nodes
from .generators import build_generator_matrices, casimir_matrix, cubic_casimir_matrix

F = Fraction


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    max_residual: float
    checked: int
    tolerance: float
    detail: str = ""


def _labels_with_dim(max_dim: int, max_label: int = 8):
    return [(P, Q) for P in range(max_label + 1) for Q in range(max_label + 1) if dimension((P, Q)) <= max_dim]


def commutator_residual(P: int, Q: int) -> float:
    m = build_generator_matrices((P, Q)).dense()

    def c(a, b):
        return a @ b - b @ a

    checks = [
        c(m["I+"], m["I-"]) - 2 * m["I3"],
        c(m["K+"], m["K-"]) - (m["I3"] + 1.5 * m["Y"]),
        c(m["L+"], m["L-"]) - (-m["I3"] + 1.5 * m["Y"]),
        c(m["I+"], m["L+"]) - m["K+"],
        c(m["Y"], m["K+"]) - m["K+"],
        c(m["Y"], m["K-"]) + m["K-"],
        c(m["I3"], m["K+"]) - m["K+"] / 2,
        c(m["I3"], m["K-"]) + m["K-"] / 2,
        c(m["Y"], m["L+"]) - m["L+"],
        c(m["I3"], m["L+"]) + m["L+"] / 2,
    ]
    return max(float(np.abs(x).max()) for x in checks)


def casimir_residual(P: int, Q: int) -> float:
    m = build_generator_matrices((P, Q)).dense()
    n = len(m["Y"])
    r2 = np.abs(casimir_matrix(m) - float(casimir_f((P, Q))) * np.eye(n)).max()
    return float(r2)


def cubic_casimir_residual(P: int, Q: int) -> float:
    m = build_generator_matrices((P, Q)).dense()
    n = len(m["Y"])
    return float(np.abs(cubic_casimir_matrix(m) - float(casimir_g((P, Q))) * np.eye(n)).max())


def suite_commutators(max_dim: int) -> SuiteResult:
    labels = _labels_with_dim(max_dim)
    worst = max(max(commutator_residual(P, Q), casimir_residual(P, Q)) for P, Q in labels)
    return SuiteResult("commutators", worst <= 1e-12, worst, len(labels), 1e-12)


def suite_unitarity(max_dim: int) -> SuiteResult:
    """Row norms and cross-gamma orthogonality for every coupling with dim1*dim2 <= max_dim."""
    from .isoscalar import isoscalar_tables
    from .oracle import products_up_to
    from .series import series_general

    worst = 0.0
    count = 0
    for s1, s2 in products_up_to(max_dim):
        for term in series_general(s1, s2):
            tabs = isoscalar_tables(s1, s2, term.irrep)
            for node in iy_nodes(term.irrep):
                m = np.array([t.rows[node].values for t in tabs])
                worst = max(worst, float(np.abs(m @ m.T - np.eye(len(tabs))).max()))
                count += 1
    return SuiteResult("unitarity", worst <= 1e-12, worst, count, 1e-12)


def suite_oracle(max_dim: int) -> SuiteResult:
    from .oracle import compare_with_recurrence, products_up_to

    worst = 0.0
    pairs = products_up_to(max_dim)
    for s1, s2 in pairs:
        r = compare_with_recurrence(s1, s2)
        worst = max(worst, r["signed"], r["projector"], r["unitarity"])
    return SuiteResult("oracle", worst <= 1e-9, worst, len(pairs), 1e-9)


def suite_golden(max_dim: int) -> SuiteResult:
    from .exact import Surd
    from .isoscalar import isoscalar_row

    s5 = Surd.sqrt(F(1, 20))
    s5x3 = Surd.sqrt(F(9, 20))
    want = [
        (((1, 1), (1, 1), (2, 2), 1, F(1), 2), [Surd.one()]),
        (((1, 1), (1, 1), (3, 0), 1, F(3, 2), 1), [Surd.sqrt(F(1, 2)), Surd.sqrt(F(1, 2), -1)]),
        (((1, 1), (1, 1), (0, 3), 1, 0, 2), [Surd(-1, F(1))]),
        (((1, 1), (1, 1), (1, 1), 1, F(1, 2), 1),
         [Surd.from_rational(F(-1, 2)), Surd.from_rational(F(1, 2)), Surd.from_rational(F(1, 2)), Surd.from_rational(F(1, 2))]),
        (((1, 1), (1, 1), (1, 1), 2, F(1, 2), 1), [-s5, -s5x3, -s5, s5x3]),
        (((1, 1), (1, 1), (0, 0), 1, 0, 0),
         [Surd.from_rational(F(-1, 2)), Surd.sqrt(F(1, 8), -1), Surd.sqrt(F(3, 8)), Surd.from_rational(F(1, 2))]),
    ]
    worst = 0.0
    for key, vals in want:
        row = isoscalar_row(*key)
        got = row.values
        worst = max(worst, float(np.abs(got - np.array([float(v) for v in vals])).max()))
        if row.exact is None or list(row.exact) != vals:
            worst = max(worst, 1.0)
    return SuiteResult("golden", worst <= 1e-12, worst, len(want), 1e-12)


def suite_closed_form(max_dim: int) -> SuiteResult:
    from .isoscalar import closed_form_pq, isoscalar_tables, pq_point

    worst = 0.0
    count = 0
    for P in range(5):
        for Q in range(5):
            tab = isoscalar_tables((P, 0), (0, Q), (P, Q))[0]
            for (i, y), row in tab.rows.items():
                for p, v in row.as_dict().items():
                    if pq_point(P, Q, y, p.mu) != p:
                        worst = max(worst, abs(v))
                        continue
                    worst = max(worst, abs(v - float(closed_form_pq(P, Q, i, y, p.mu))))
                count += 1
    return SuiteResult("closed-form", worst <= 1e-12, worst, count, 1e-12)


SUITES: Dict[str, Callable[[int], SuiteResult]] = {
    "commutators": suite_commutators,
    "unitarity": suite_unitarity,
    "golden": suite_golden,
    "closed-form": suite_closed_form,
    "oracle": suite_oracle,
}


def run(suite: str, max_dim: int) -> List[SuiteResult]:
    names = list(SUITES) if suite == "all" else [suite]
    return [SUITES[n](max_dim) for n in names]
