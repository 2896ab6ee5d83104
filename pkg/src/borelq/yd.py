"""Yetter-Drinfel'd modules H_{beta,g} = H ._beta g over the finite quotient.

The twisted action is h ._beta a = sum beta(h_2) h_3 a S^{-1}(h_1) and the
coaction is the restriction of the coproduct.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from .algebra import _add_term
from .hopf import Tensor, delta, delta2, mul
from .linalg import Echelon
from .quotient import FiniteHopf, QuotientError, QuotientSpec, build_finite_hopf, quotient_spec  # noqa: F401


@dataclass(frozen=True)
class BetaChar:
    """Algebra map beta: u -> k with beta(K_i) = zeta_d^{k_i} = q^{(r/d) k_i}, beta(E_i) = 0."""

    exps: tuple

    def value(self, H: FiniteHopf, m):
        k, lam = m
        if any(k):
            return H.ctx.zero()
        step = H.spec.r // H.d
        return H.ctx.q_pow(step * sum(a * b for a, b in zip(self.exps, lam)))

    def values(self, H: FiniteHopf) -> list:
        step = H.spec.r // H.d
        return [H.ctx.q_pow(step * e) for e in self.exps]


def all_betas(H: FiniteHopf) -> list[BetaChar]:
    return [BetaChar(e) for e in product(range(H.d), repeat=H.n)]


def group_likes(H: FiniteHopf) -> list:
    """K^lam for lam in (Z/d)^n, each verified to be group-like."""
    out = []
    for g in H.group_likes:
        d = delta(H, {g: H.ctx.one()})
        if d.terms != {(g, g): H.ctx.one()} or H.mono_counit(g) != H.ctx.one():
            raise AssertionError(f"{H.mono_str(g)} is not group-like")
        out.append(g)
    return out


class BetaAction:
    def __init__(self, H: FiniteHopf, beta: BetaChar, inverse: bool = True):
        self.H = H
        self.beta = beta
        self._d2: dict = {}
        self._S = H.mono_antipode_inv if inverse else H.mono_antipode  # inverse=False is a fault fixture

    def _delta2(self, h):
        hit = self._d2.get(h)
        if hit is None:
            hit = self._d2[h] = delta2(self.H, {h: self.H.ctx.one()}).terms
        return hit

    def act_mono(self, h, a: Mapping) -> dict:
        H = self.H
        out: dict = {}
        for (h1, h2, h3), c in self._delta2(h).items():
            b = self.beta.value(H, h2)
            if not b:
                continue
            x = mul(H, mul(H, {h3: c * b}, a), self._S(h1))
            for m, y in x.items():
                _add_term(out, m, y)
        return out

    def act(self, h: Mapping, a: Mapping) -> dict:
        out: dict = {}
        for m, c in h.items():
            for k, y in self.act_mono(m, a).items():
                _add_term(out, k, c * y)
        return out


@dataclass
class YDModule:
    H: FiniteHopf
    beta: BetaChar
    g: tuple
    carrier: Echelon
    basis: list  # carrier basis vectors (dicts)
    action: BetaAction
    coaction_closed: bool = True
    info: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Mapping) -> bool:
        return self.carrier.contains(v)


def _order(H: FiniteHopf) -> dict:
    return {m: i for i, m in enumerate(H.basis())}


def build_H_beta_g(H: FiniteHopf, beta: BetaChar, g, inverse: bool = True) -> YDModule:
    """Closure of {g} under ._beta by the algebra generators."""
    if g not in H.group_likes:
        raise ValueError("g must be a group-like K^lam")
    act = BetaAction(H, beta, inverse)
    ech = Echelon(_order(H))
    start = {g: H.ctx.one()}
    ech.add(start)
    basis = [start]
    queue = [start]
    gens = H.generators()
    while queue:
        v = queue.pop(0)
        for h in gens:
            w = act.act_mono(h, v)
            if w and ech.add(w):
                basis.append(w)
                queue.append(w)
        if len(basis) > H.dim:
            raise AssertionError("closure did not stabilise")
    mod = YDModule(H, beta, g, ech, basis, act)
    mod.coaction_closed = _coaction_closed(mod)
    return mod


def _coaction_closed(mod: YDModule) -> bool:
    H = mod.H
    for v in mod.basis:
        by_right: dict = {}
        for (a, b), c in delta(H, v).terms.items():
            by_right.setdefault(b, {})
            _add_term(by_right[b], a, c)
        if not all(mod.contains(x) for x in by_right.values()):
            return False
    return True


def _tensor_from_pairs(H: FiniteHopf, pairs: Iterable[tuple[Mapping, Mapping]]) -> Tensor:
    out: dict = {}
    for left, right in pairs:
        for a, x in left.items():
            for b, y in right.items():
                _add_term(out, (a, b), x * y)
    return Tensor(H, 2, out)


def check_conjugation_form(mod: YDModule, h, m: Mapping) -> bool:
    """rho(h.m) = h_2 . m_0 (x) h_3 m_1 S^{-1}(h_1)."""
    H, act = mod.H, mod.action
    lhs = delta(H, act.act_mono(h, m))
    pairs = []
    dm = delta(H, m).terms
    for (h1, h2, h3), c in act._delta2(h).items():
        Sh1 = H.mono_antipode_inv(h1)
        for (m0, m1), x in dm.items():
            left = act.act_mono(h2, {m0: c * x})
            right = mul(H, mul(H, {h3: H.ctx.one()}, {m1: H.ctx.one()}), Sh1)
            pairs.append((left, right))
    return lhs == _tensor_from_pairs(H, pairs)


def check_compatibility(mod: YDModule, h, m: Mapping) -> bool:
    """h_1 . m_0 (x) h_2 m_1 = (h_2 . m)_0 (x) (h_2 . m)_1 h_1."""
    H, act = mod.H, mod.action
    dh = delta(H, {h: H.ctx.one()}).terms
    dm = delta(H, m).terms
    lhs_pairs = []
    for (h1, h2), c in dh.items():
        for (m0, m1), x in dm.items():
            lhs_pairs.append((act.act_mono(h1, {m0: c * x}), mul(H, {h2: H.ctx.one()}, {m1: H.ctx.one()})))
    rhs_pairs = []
    for (h1, h2), c in dh.items():
        v = act.act_mono(h2, m)
        for (v0, v1), x in delta(H, v).terms.items():
            rhs_pairs.append(({v0: c * x}, mul(H, {v1: H.ctx.one()}, {h1: H.ctx.one()})))
    return _tensor_from_pairs(H, lhs_pairs) == _tensor_from_pairs(H, rhs_pairs)


def test_elements(H: FiniteHopf, max_height: int = 3) -> list:
    return list(dict.fromkeys(H.generators() + H.basis_up_to_height(max_height)))


def yd_compatibility_check(mod: YDModule, max_height: int = 3) -> dict:
    H = mod.H
    fails_conj, fails_compat = [], []
    hs = test_elements(H, max_height)
    for h in hs:
        for idx, m in enumerate(mod.basis):
            if not check_conjugation_form(mod, h, m):
                fails_conj.append((H.mono_str(h), idx))
            if not check_compatibility(mod, h, m):
                fails_compat.append((H.mono_str(h), idx))
    return {"conjugation_form": not fails_conj, "compatibility": not fails_compat, "coaction_closed": mod.coaction_closed,
            "failures_conjugation": fails_conj[:5], "failures_compatibility": fails_compat[:5], "checked_h": len(hs),
            "pass": not fails_conj and not fails_compat and mod.coaction_closed}


def beta_exponent(H: FiniteHopf, value) -> int:
    step = H.spec.r // H.d
    for k in range(H.d):
        if H.ctx.q_pow(step * k) == value:
            return k
    raise ValueError(f"{value} is not a d-th root of unity")


def phi_invariants(mod: YDModule) -> dict:
    """Recover (beta, g): g spans a one-dimensional subcomodule kg, beta from K_i ._beta g."""
    H = mod.H
    found = [g for g in H.group_likes if mod.contains({g: H.ctx.one()})]
    out = {"g_candidates": [list(g[1]) for g in found], "multiplicity": len(found),
           "ambiguous": len(found) != 1}
    if len(found) != 1:
        return out
    g = found[0]
    betas = []
    for i in range(H.n):
        v = mod.action.act_mono(H.K(i), {g: H.ctx.one()})
        if set(v) != {g}:
            raise AssertionError("g is not a K-eigenvector")
        betas.append(beta_exponent(H, v[g]))
    out["g"] = list(g[1])
    out["beta"] = betas
    return out


def action_associative(mod: YDModule) -> bool:
    """(h h') ._beta a = h ._beta (h' ._beta a) on generator pairs and the carrier basis."""
    H, act = mod.H, mod.action
    gens = H.generators()
    for h1 in gens:
        for h2 in gens:
            hh = mul(H, {h1: H.ctx.one()}, {h2: H.ctx.one()})
            for a in mod.basis:
                if act.act(hh, a) != act.act_mono(h1, act.act_mono(h2, a)):
                    return False
    return True


def unital(mod: YDModule) -> bool:
    return all(mod.action.act_mono(mod.H.unit, a) == a for a in mod.basis)


def coaction_counit(mod: YDModule) -> bool:
    H = mod.H
    return all({k[0]: c for k, c in delta(H, a).contract(1, H.mono_counit).terms.items()} == a
               for a in mod.basis)


def cyclic_from_homogeneous(mod: YDModule) -> bool:
    """Every E-degree-homogeneous carrier vector generates the carrier under action and coaction."""
    H = mod.H
    by_deg: dict = {}
    for v in mod.basis:
        degs = {H.gen.frame.degree(m[0]) for m in v}
        if len(degs) == 1:
            by_deg.setdefault(degs.pop(), []).append(v)
    for vs in by_deg.values():
        for v in vs:
            ech = Echelon(_order(H))
            ech.add(v)
            queue = [v]
            while queue:
                x = queue.pop()
                new = [mod.action.act_mono(h, x) for h in H.generators()]
                by_right: dict = {}
                for (a, b), c in delta(H, x).terms.items():
                    _add_term(by_right.setdefault(b, {}), a, c)
                new.extend(by_right.values())
                for w in new:
                    if w and ech.add(w):
                        queue.append(w)
            if len(ech) != mod.dim:
                return False
    return True


def scan(H: FiniteHopf, max_height: int = 3, checks: bool = True) -> list[dict]:
    rows = []
    for beta in all_betas(H):
        for g in group_likes(H):
            mod = build_H_beta_g(H, beta, g)
            row = {"beta": list(beta.exps), "g": list(g[1]), "dim": mod.dim,
                   "invariants": phi_invariants(mod)}
            if checks:
                rep = yd_compatibility_check(mod, max_height)
                row["yd_ok"] = rep["pass"]
            rows.append(row)
    return rows
