import pytest

from borelq.yd import (BetaAction, BetaChar, action_associative, all_betas, build_H_beta_g, coaction_counit,
                       cyclic_from_homogeneous, group_likes, phi_invariants, scan, unital,
                       yd_compatibility_check)


def test_group_likes(finite):
    H = finite(5)
    assert len(group_likes(H)) == 5
    assert len(all_betas(H)) == 5


def test_trivial_pair_is_one_dimensional(finite):
    H = finite(4)
    mod = build_H_beta_g(H, BetaChar((0,)), H.unit)
    assert mod.dim == 1 and [H.fmt(v) for v in mod.basis] == ["1"]


def test_carrier_example(finite):
    # beta(K) = -1 at r = 4: the carrier of H_{beta,1} is span{1, EK}
    H = finite(4)
    mod = build_H_beta_g(H, BetaChar((1,)), H.unit)
    assert mod.dim == 2
    assert mod.contains({((1,), (1,)): H.ctx.one()})
    assert action_associative(mod) and unital(mod) and coaction_counit(mod)
    assert cyclic_from_homogeneous(mod)


def test_twisted_action_on_k_power(finite):
    # E ._beta K^m = (beta(K) - q^{2m}) E K^{m-1}
    H = finite(5)
    beta = BetaChar((2,))
    out = BetaAction(H, beta).act_mono(H.E(0), {H.group_like((3,)): H.ctx.one()})
    expected = beta.values(H)[0] - H.ctx.q_pow(6)
    assert out == {((1,), (2,)): expected}


@pytest.mark.parametrize("r", [4, 5])
def test_scan(finite, r):
    H = finite(r)
    rows = scan(H)
    assert len(rows) == H.d ** 2
    assert all(row["yd_ok"] for row in rows)
    readouts = [(tuple(row["invariants"]["beta"]), tuple(row["invariants"]["g"])) for row in rows]
    assert readouts == [(tuple(row["beta"]), tuple(row["g"])) for row in rows]
    assert len(set(readouts)) == len(readouts)


def test_fault_fixture_is_detected(finite):
    H = finite(4)
    for beta in all_betas(H):
        for g in H.group_likes:
            bad = build_H_beta_g(H, beta, g, inverse=False)
            good = build_H_beta_g(H, beta, g)
            if bad.dim > 1 or good.dim > 1:
                assert not yd_compatibility_check(bad)["pass"]


def test_phi_on_module(finite):
    H = finite(5)
    mod = build_H_beta_g(H, BetaChar((3,)), H.group_like((2,)))
    inv = phi_invariants(mod)
    assert inv["beta"] == [3] and inv["g"] == [2] and not inv["ambiguous"]


def test_g_must_be_group_like(finite):
    H = finite(4)
    with pytest.raises(ValueError):
        build_H_beta_g(H, BetaChar((0,)), H.E(0))
