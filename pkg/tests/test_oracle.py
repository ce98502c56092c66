import numpy as np
import pytest

from su3cg.core import Irrep, casimir_f, enumerate_basis
from su3cg.generators import OPERATORS, build_generator_matrices
from su3cg.oracle import (
    CapExceeded,
    build_product,
    compare_with_recurrence,
    generate_irrep,
    highest_weight_subspace,
    moshinsky_x,
    oracle_irreps,
    products_up_to,
    signed_top_vector,
)

O = Irrep(1, 1)


def test_cap():
    with pytest.raises(CapExceeded):
        build_product(Irrep(3, 3), Irrep(3, 3), cap=100)


def test_product_casimir_spectrum():
    ps = build_product(O, O)
    ev = np.round(np.linalg.eigvalsh(ps.casimir()), 9)
    want = {float(casimir_f(Irrep(*l))) for l in [(2, 2), (3, 0), (0, 3), (1, 1), (0, 0)]}
    assert set(ev.tolist()) == {round(w, 9) for w in want}


@pytest.mark.parametrize("s1,s2,s", [(O, O, Irrep(2, 2)), (O, O, Irrep(3, 0)), (Irrep(2, 0), O, Irrep(3, 1))])
def test_oracle_states_carry_the_built_matrices(s1, s2, s):
    ps = build_product(s1, s2)
    vecs = generate_irrep(ps, signed_top_vector(ps, s), s)
    states = enumerate_basis(s).states
    E = np.array([vecs[st] for st in states]).T
    g = build_generator_matrices(s).dense()
    for op in OPERATORS:
        assert np.abs(E.T @ ps.ops[op] @ E - g[op]).max() <= 1e-12, op


def test_octet_multiplicity_subspace():
    ps = build_product(O, O)
    assert highest_weight_subspace(ps, O).shape[1] == 2
    copies = oracle_irreps(O, O, O)
    assert len(copies) == 2


def test_moshinsky_x_hermitian_and_invariant():
    ps = build_product(O, O)
    x = moshinsky_x(ps)
    assert np.abs(x - x.T).max() <= 1e-12
    for op in OPERATORS:
        assert np.abs(x @ ps.ops[op] - ps.ops[op] @ x).max() <= 1e-10, op


def test_products_up_to():
    pairs = products_up_to(9)
    assert (Irrep(1, 0), Irrep(0, 1)) in pairs
    assert (O, Irrep(1, 0)) not in pairs


@pytest.mark.parametrize("s1,s2", [(O, O), (Irrep(1, 0), Irrep(0, 1)), (Irrep(2, 0), O), (O, Irrep(0, 3))])
def test_recurrence_matches_oracle(s1, s2):
    r = compare_with_recurrence(s1, s2)
    assert max(r.values()) <= 1e-9, r
