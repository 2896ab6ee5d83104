import pytest

from borelq.cartan import cartan_datum
from borelq.hopf import antipode, antipode_inv, delta, hopf_axiom_check, mul
from borelq.quotient import FiniteHopf, QuotientError, quotient_spec


@pytest.mark.parametrize("t,r,d,valid", [
    ("A1", 3, 3, True), ("A1", 4, 2, True), ("A1", 6, 3, True), ("A2", 4, 2, True),
    ("B2", 6, 3, True), ("B2", 8, 4, True), ("G2", 8, 4, True), ("G2", 6, 3, False), ("B2", 4, 2, False),
])
def test_spec_d_and_validity(t, r, d, valid):
    spec = quotient_spec(cartan_datum(t), r)
    assert spec.d == d
    assert spec.valid == valid


def test_guards():
    with pytest.raises(QuotientError):
        quotient_spec(cartan_datum("A1"), 2)
    with pytest.raises(QuotientError):
        FiniteHopf(quotient_spec(cartan_datum("G2"), 6))
    # K^d not central: q^{d DC} != 1
    with pytest.raises(QuotientError):
        FiniteHopf(quotient_spec(cartan_datum("A2"), 4))


@pytest.mark.parametrize("r", [3, 4, 5])
def test_finite_axioms_a1(finite, r):
    H = finite(r)
    assert H.dim == H.d ** 2
    rep = hopf_axiom_check(H, [(H.mono_str(m), {m: H.ctx.one()}) for m in H.basis()])
    assert rep["pass"], rep


def test_relations_hold(finite):
    H = finite(5)
    E, K = {H.E(0): H.ctx.one()}, {H.K(0): H.ctx.one()}
    x = E
    for _ in range(H.d - 1):
        x = mul(H, x, E)
    assert x == {}  # E^d = 0
    k = K
    for _ in range(H.d - 1):
        k = mul(H, k, K)
    assert k == {H.unit: H.ctx.one()}  # K^d = 1
    assert mul(H, K, E) == {m: c * H.ctx.q_pow(2) for m, c in mul(H, E, K).items()}


def test_antipode_and_delta_a1(finite):
    H = finite(4)
    E = {H.E(0): H.ctx.one()}
    assert antipode(H, antipode_inv(H, E)) == E
    d = delta(H, E).terms
    assert d == {(H.E(0), H.unit): H.ctx.one(), (H.K(0), H.E(0)): H.ctx.one()}


def test_b2_quotient_is_a_hopf_algebra_on_generators(finite):
    H = finite(6, "B2")
    elems = [(H.mono_str(m), {m: H.ctx.one()}) for m in H.generators() + H.basis_up_to_height(2)]
    assert hopf_axiom_check(H, elems)["pass"]
