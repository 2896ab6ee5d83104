import pytest

from borelq.algebra import UqBorel
from borelq.cartan import cartan_datum, degrees_up_to_height, kostant_dim
from borelq.repmod import (F_of, F_sigma_injectivity_check, TruncatedVerma, WeightSymbol, decompose_tensor,
                           tensor_of_vermas, weight_of_vector)


def test_weights_of_verma_a1(A1):
    M = TruncatedVerma(A1, "s", 4)
    assert [str(M.weight_of(k)) for k in M.basis] == ["s", "s*q^(2)", "s*q^(4)", "s*q^(6)", "s*q^(8)"]
    assert M.minimal_weight() == WeightSymbol.symbol("s", 1)
    assert M.quotient_weight() == M.minimal_weight()
    assert len(M.maximal_submodule()) == len(M.basis) - 1


def test_k_eigenvalue(A1):
    M = TruncatedVerma(A1, "s", 3)
    out, overflow = M.action(("K", 0), {(1,): 1})
    assert str(out[(1,)]) == "s*q^2" and not overflow


def test_e_action_and_overflow(A1):
    M = TruncatedVerma(A1, "s", 2)
    out, overflow = M.action(("E", 0), {(1,): 1})
    assert out == {(2,): 1} and not overflow
    out, overflow = M.action(("E", 0), {(2,): 1})
    assert out == {} and overflow


def test_weight_map():
    A2 = cartan_datum("A2")
    assert F_of(A2, (1, 0)) == (2, -1)
    s = WeightSymbol.symbol("s", 2)
    assert weight_of_vector(A2, s, (1, 1)) == s.shift((1, 1))
    assert F_sigma_injectivity_check(A2.DC, 6)
    assert not F_sigma_injectivity_check(((1, 1), (1, 1)), 2)


@pytest.mark.parametrize("t,h", [("A1", 6), ("A2", 3)])
def test_tensor_decomposition(algebras, t, h):
    rep = decompose_tensor(tensor_of_vermas(algebras[t], h))
    assert rep.passed, [s.to_json() for s in rep.failures()]
    assert rep.multiplicities == {eta: kostant_dim(algebras[t].frame, eta)
                                  for eta in degrees_up_to_height(algebras[t].n, h)}


def test_a1_slice_dimensions(A1):
    rep = decompose_tensor(tensor_of_vermas(A1, 5))
    assert [(s.degree, s.dim) for s in rep.slices] == [((m,), m + 1) for m in range(6)]
    assert [s.weight for s in rep.slices] == ["s*s'"] + [f"s*s'*q^({2 * m})" for m in range(1, 6)]


def test_e_on_tensor_standard_coefficients(A1):
    T = tensor_of_vermas(A1, 3)
    out, _ = T.action(("E", 0), {((0,), (0,)): A1.ctx.one()})
    assert out == {((1,), (0,)): 1, ((0,), (1,)): 1}
    std = {k: str(c) for k, c in T.standard_coefficients(out).items()}
    assert std == {((1,), (0,)): "1", ((0,), (1,)): "s_1"}


def test_act_plus_matches_generator_action(A2):
    T = tensor_of_vermas(A2, 3)
    frame = A2.frame
    for i in range(2):
        m = tuple(1 if s == frame.simple_positions()[i] else 0 for s in range(frame.N))
        for g in T.slice_basis((1, 0)) + T.slice_basis((0, 1)):
            assert T.act_plus(m, g) == T.action(("E", i), {g: A2.ctx.one()})[0]


def test_mismatched_factors_rejected(A1):
    from borelq.repmod import TensorSlice
    with pytest.raises(ValueError):
        TensorSlice(TruncatedVerma(A1, "s", 2), TruncatedVerma(A1, "t", 3))
