from fractions import Fraction

import pytest

from borelq.cartan import cartan_datum
from borelq.hopf import Tensor
from borelq.quotient import quotient_spec
from borelq.rmatrix import (DEFAULT_GRID, bilinear_A, build_constraints, classify, consistency_conditions,
                            kernel_dim_exact, project_degree_zero, propagate, solve_finite, solve_generic,
                            sweedler_R, verify_qcc, witness_tensor)
from borelq.scalars import GENERIC, ScalarContext


@pytest.mark.parametrize("t,B", [("A1", 1), ("A1", 3), ("A2", 1), ("A2", 2), ("B2", 1)])
def test_generic_kernel_is_zero(t, B):
    assert solve_generic(cartan_datum(t), B) == 0
    assert solve_generic(cartan_datum(t), B, method="graph") == 0


def test_empty_system_has_free_unknown():
    # no generator equations: the single unknown a_00 is unconstrained
    assert solve_generic(cartan_datum("A1"), 0, generators=[]) == 1


def test_bilinear_form():
    assert bilinear_A(cartan_datum("A1"), (1,), (1,)) == 2
    assert bilinear_A(cartan_datum("G2"), (1, 0), (0, 1)) == -3


@pytest.mark.parametrize("t,r", [("A1", 3), ("A1", 4), ("A1", 8), ("A2", 5), ("B2", 6)])
def test_graph_matches_row_reduction(t, r):
    spec = quotient_spec(cartan_datum(t), r)
    u, eqs = build_constraints(spec.datum, "modular", spec.d, r)
    assert propagate(u, eqs, r)[0] == kernel_dim_exact(u, eqs, ScalarContext(r))


def test_consistency_only_a1_r4():
    assert consistency_conditions(cartan_datum("A1"), 2, 4)
    assert not consistency_conditions(cartan_datum("A1"), 3, 3)
    assert not consistency_conditions(cartan_datum("A1"), 4, 8)


def test_classification_grid():
    rows = classify(DEFAULT_GRID)
    positive = [(s.spec.datum.name, s.spec.r) for s in rows if s.invertible_exists]
    assert positive == [("A1", 4)]
    invalid = {(s.spec.datum.name, s.spec.r) for s in rows if not s.valid}
    assert invalid == set()  # every grid point has d > d0
    assert all(c["pass"] for s in rows for c in s.checks)


def test_invalid_spec_flagged():
    sol = solve_finite(quotient_spec(cartan_datum("B2"), 4))
    assert not sol.valid and sol.invertible_exists is None
    assert sol.to_json()["valid"] is False


def test_sweedler(finite):
    H = finite(4)
    R = sweedler_R(H)
    assert verify_qcc(H, R)["pass"]
    assert R.flip() * R == Tensor.one(H)
    sol = solve_finite(quotient_spec(cartan_datum("A1"), 4))
    assert witness_tensor(H, sol.witness, Fraction(1, 2)) == R
    assert project_degree_zero(R) == R


def test_trivial_r_fails(finite):
    H = finite(4)
    rep = verify_qcc(H, Tensor.one(H))
    assert not rep["intertwines"] and rep["invertible"]


def test_witness_family(finite):
    # a_{j,l} = q^{-A(j,l)} a_00, equal to q^{2jl} when q^{2A} = 1
    H = finite(4)
    sol = solve_finite(quotient_spec(cartan_datum("A1"), 4))
    for (j, l), a in sol.witness.items():
        assert a == H.ctx.q_pow(2 * j[0] * l[0])


def test_json_report_shape():
    js = solve_finite(quotient_spec(cartan_datum("A1"), 4)).to_json()
    assert js["case"] == {"type": "A1", "r": 4, "d": 2, "d0": 1}
    assert js["kernel_dim"] == 1 and js["invertible_exists"] is True
    assert len(js["witness"]) == 4
