"""Coproduct, counit, antipode and tensor arithmetic.

Everything here works against a small monomial-level interface (``HopfStructure``)
implemented both by ``BorelHopf`` (generic U^{>=0}) and by the finite quotient
in ``yd``.  Elements are dicts {monomial: scalar}; tensors are ``Tensor``
objects keyed by tuples of monomials.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Mapping, Protocol, Sequence

from .algebra import AlgebraError, ReducedElement, UqBorel, _add_term, _fmt_coeff, _fmt_sum, vadd, vneg
from .linalg import solve


class HopfStructure(Protocol):
    ctx: object
    unit: object

    def mono_mul(self, m1, m2) -> dict: ...
    def mono_delta(self, m) -> dict: ...
    def mono_counit(self, m): ...
    def mono_antipode(self, m) -> dict: ...
    def mono_antipode_inv(self, m) -> dict: ...
    def mono_str(self, m) -> str: ...


# -- element-level operations on dicts ---------------------------------------------

def mul(H: HopfStructure, a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            c = c1 * c2
            for m, x in H.mono_mul(m1, m2).items():
                _add_term(out, m, c * x)
    return out


def linear(fn: Callable[[object], dict], a: Mapping) -> dict:
    out: dict = {}
    for m, c in a.items():
        for m2, x in fn(m).items():
            _add_term(out, m2, c * x)
    return out


def _terms(a) -> Mapping:
    return a.terms if isinstance(a, (ReducedElement, Tensor)) else a


def delta(H: HopfStructure, a) -> "Tensor":
    return Tensor(H, 2, linear(H.mono_delta, _terms(a)))


def counit(H: HopfStructure, a):
    out = H.ctx.zero()
    for m, c in _terms(a).items():
        e = H.mono_counit(m)
        if e:
            out = out + c * e
    return out


def antipode(H: HopfStructure, a) -> dict:
    return linear(H.mono_antipode, _terms(a))


def antipode_inv(H: HopfStructure, a) -> dict:
    return linear(H.mono_antipode_inv, _terms(a))


def delta2(H: HopfStructure, a) -> "Tensor":
    """(Delta (x) id) Delta; asserted equal to (id (x) Delta) Delta."""
    d = delta(H, a)
    left = d.expand(0)
    right = d.expand(1)
    if left != right:
        raise AlgebraError("coassociativity failed while forming the iterated coproduct")
    return left


# -- tensors -----------------------------------------------------------------------

class Tensor:
    """Finite combination of k-fold tensors of monomials."""

    __slots__ = ("H", "arity", "terms")

    def __init__(self, H: HopfStructure, arity: int, terms: dict):
        self.H = H
        self.arity = arity
        self.terms = terms

    @classmethod
    def pure(cls, H: HopfStructure, *factors: Mapping) -> "Tensor":
        out: dict = {}
        for combo in product(*(list(f.items()) for f in factors)):
            c = combo[0][1]
            for _, x in combo[1:]:
                c = c * x
            _add_term(out, tuple(m for m, _ in combo), c)
        return cls(H, len(factors), out)

    @classmethod
    def one(cls, H: HopfStructure, arity: int = 2) -> "Tensor":
        return cls(H, arity, {(H.unit,) * arity: H.ctx.one()})

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(out, k, c)
        return Tensor(self.H, self.arity, out)

    def __neg__(self):
        return Tensor(self.H, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Tensor":
        if not c:
            return Tensor(self.H, self.arity, {})
        return Tensor(self.H, self.arity, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            return self.scale(self.H.ctx.coerce(other))
        if other.arity != self.arity:
            raise AlgebraError("tensor arity mismatch")
        H = self.H
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                parts = [H.mono_mul(a, b) for a, b in zip(k1, k2)]
                c0 = c1 * c2
                for combo in product(*(list(p.items()) for p in parts)):
                    c = c0
                    for _, x in combo:
                        c = c * x
                    _add_term(out, tuple(m for m, _ in combo), c)
        return Tensor(H, self.arity, out)

    def apply(self, slot: int, fn: Callable[[object], dict]) -> "Tensor":
        """Apply a linear map monomial -> {monomial: c} on one slot."""
        out: dict = {}
        for k, c in self.terms.items():
            for m2, x in fn(k[slot]).items():
                _add_term(out, k[:slot] + (m2,) + k[slot + 1:], c * x)
        return Tensor(self.H, self.arity, out)

    def expand(self, slot: int) -> "Tensor":
        """Apply the coproduct on one slot (arity grows by one)."""
        out: dict = {}
        for k, c in self.terms.items():
            for pair, x in self.H.mono_delta(k[slot]).items():
                _add_term(out, k[:slot] + pair + k[slot + 1:], c * x)
        return Tensor(self.H, self.arity + 1, out)

    def contract(self, slot: int, fn: Callable[[object], object]) -> "Tensor":
        """Apply a scalar-valued functional (e.g. the counit) on one slot."""
        out: dict = {}
        for k, c in self.terms.items():
            e = fn(k[slot])
            if e:
                _add_term(out, k[:slot] + k[slot + 1:], c * e)
        return Tensor(self.H, self.arity - 1, out)

    def multiply_out(self) -> dict:
        """m: H (x) ... (x) H -> H."""
        out: dict = {}
        for k, c in self.terms.items():
            acc = {k[0]: c}
            for m in k[1:]:
                acc = mul(self.H, acc, {m: 1})
            for m, x in acc.items():
                _add_term(out, m, x)
        return out

    def flip(self) -> "Tensor":
        if self.arity != 2:
            raise AlgebraError("flip needs a 2-tensor")
        return Tensor(self.H, 2, {(b, a): c for (a, b), c in self.terms.items()})

    def permute(self, perm: Sequence[int]) -> "Tensor":
        return Tensor(self.H, self.arity, {tuple(k[p] for p in perm): c for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        parts = []
        for k, c in sorted(self.terms.items(), key=lambda t: repr(t[0])):
            body = " (x) ".join(self.H.mono_str(m) for m in k)
            parts.append(_fmt_coeff(c, body))
        return _fmt_sum(parts)

    def __repr__(self):
        return f"Tensor({self})"


# -- U^{>=0} -----------------------------------------------------------------------

class BorelHopf:
    """Hopf structure of U^{>=0} on reduced monomials (basis word, lam)."""

    def __init__(self, alg: UqBorel, antipode_override: Callable | None = None):
        self.alg = alg
        self.ctx = alg.ctx
        self.unit = ((), alg.zero_weight)
        self._delta_words: dict = {}
        self._S_words: dict = {}
        self._Sinv_words: dict = {}
        self._Sinv_gen: dict = {}
        self._S_gen_override = antipode_override

    def mono_mul(self, m1, m2) -> dict:
        return self.alg.mono_mul(m1, m2)

    def mono_str(self, m) -> str:
        return str(ReducedElement(self.alg, {m: 1})) if m != self.unit else "1"

    def element(self, a) -> ReducedElement:
        return ReducedElement(self.alg, dict(_terms(a)))

    # Delta(E_i) = E_i (x) 1 + K_i (x) E_i, Delta(K) = K (x) K
    def _delta_word(self, w: tuple) -> dict:
        hit = self._delta_words.get(w)
        if hit is not None:
            return hit
        alg = self.alg
        dc = alg.datum.DC
        z = alg.zero_weight
        raw: dict = {}
        L = len(w)
        for mask in range(1 << L):
            # bit p set: letter p goes right (K_{w_p} left, E_{w_p} right)
            left = tuple(w[p] for p in range(L) if not mask >> p & 1)
            right = tuple(w[p] for p in range(L) if mask >> p & 1)
            e = 0
            for p in range(L):
                if mask >> p & 1:
                    for p2 in range(p + 1, L):
                        if not mask >> p2 & 1:
                            e += dc[w[p]][w[p2]]
            mu = alg.deg(right)
            _add_term(raw, ((left, mu), right), alg.q(e))
        out: dict = {}
        for ((left, mu), right), c in raw.items():
            lc = alg.word_coords(left)
            rc = alg.word_coords(right)
            for lb, x in lc.items():
                for rb, y in rc.items():
                    _add_term(out, ((lb, mu), (rb, z)), c * x * y)
        self._delta_words[w] = out
        return out

    def mono_delta(self, m) -> dict:
        w, lam = m
        if not any(lam):
            return self._delta_word(w)
        return {((a, vadd(mu, lam)), (b, vadd(nu, lam))): c
                for ((a, mu), (b, nu)), c in self._delta_word(w).items()}

    def mono_counit(self, m):
        return self.ctx.one() if not m[0] else self.ctx.zero()

    def mono_degree_zero(self, m) -> bool:
        return not m[0]

    def S_generator(self, i: int) -> dict:
        """S(E_i) = -K_i^{-1} E_i = -q^{-2 d_i} E_i K_i^{-1}."""
        if self._S_gen_override is not None:
            return self._S_gen_override(self.alg, i)
        alg = self.alg
        return {((i,), vneg(alg.alpha(i))): -alg.q(-alg.datum.DC[i][i])}

    def _S_word(self, w: tuple) -> dict:
        hit = self._S_words.get(w)
        if hit is not None:
            return hit
        acc = {self.unit: self.ctx.one()}
        for i in reversed(w):
            acc = self.alg.mul_terms(acc, self.S_generator(i))
        self._S_words[w] = acc
        return acc

    def mono_antipode(self, m) -> dict:
        w, lam = m
        return self.alg.mul_terms({((), vneg(lam)): self.ctx.one()}, self._S_word(w))

    def Sinv_generator(self, i: int) -> dict:
        """Solve S(x) = E_i on span{E_i K_lam : lam in [-1,1]^n}."""
        hit = self._Sinv_gen.get(i)
        if hit is not None:
            return hit
        alg = self.alg
        cands = [((i,), lam) for lam in product((-1, 0, 1), repeat=alg.n)]
        images = [self.mono_antipode(m) for m in cands]
        keys = sorted({k for im in images for k in im} | {((i,), alg.zero_weight)}, key=repr)
        rows = [{c: im.get(k, 0) for c, im in zip(range(len(cands)), images) if im.get(k)} for k in keys]
        rhs = [1 if k == ((i,), alg.zero_weight) else 0 for k in keys]
        x = solve(rows, rhs, list(range(len(cands))))
        if x is None:
            raise AlgebraError(f"S(x) = E_{i + 1} has no solution on the degree slice")
        out = {cands[c]: v for c, v in x.items() if v}
        if linear(self.mono_antipode, out) != {((i,), alg.zero_weight): self.ctx.one()}:
            raise AlgebraError("inverse antipode verification failed")
        self._Sinv_gen[i] = out
        return out

    def _Sinv_word(self, w: tuple) -> dict:
        hit = self._Sinv_words.get(w)
        if hit is not None:
            return hit
        acc = {self.unit: self.ctx.one()}
        for i in reversed(w):
            acc = self.alg.mul_terms(acc, self.Sinv_generator(i))
        self._Sinv_words[w] = acc
        return acc

    def mono_antipode_inv(self, m) -> dict:
        w, lam = m
        return self.alg.mul_terms({((), vneg(lam)): self.ctx.one()}, self._Sinv_word(w))

    def pbw_basis(self, max_height: int, box: int = 1) -> list[tuple]:
        """(k, lam, element) for every E^k K_lam with height <= max_height and lam in [-box, box]^n."""
        from .cartan import degrees_up_to_height
        alg = self.alg
        out = []
        lams = list(product(range(-box, box + 1), repeat=alg.n))
        for eta in degrees_up_to_height(alg.n, max_height):
            for k in alg.frame.pbw_indices(eta):
                base = alg.pbw_monomial(k)
                for lam in lams:
                    out.append((k, lam, base * alg.K(lam)))
        return out


def height_of_monomial(m) -> int:
    return len(m[0])


# -- axiom checks ----------------------------------------------------------------------

LAWS = ("coassociativity", "counit_left", "counit_right", "antipode_left", "antipode_right")


def check_element(H: HopfStructure, x: Mapping) -> dict[str, bool]:
    """Evaluate the five Hopf laws on one element."""
    d = delta(H, x)
    res = {}
    res["coassociativity"] = d.expand(0) == d.expand(1)
    x = {m: c for m, c in x.items() if c}
    res["counit_left"] = d.contract(0, H.mono_counit).terms == {(m,): c for m, c in x.items()}
    res["counit_right"] = d.contract(1, H.mono_counit).terms == {(m,): c for m, c in x.items()}
    eps = counit(H, x)
    target = {H.unit: eps} if eps else {}
    res["antipode_left"] = d.apply(0, H.mono_antipode).multiply_out() == target
    res["antipode_right"] = d.apply(1, H.mono_antipode).multiply_out() == target
    return res


def hopf_axiom_check(H: HopfStructure, elements: Iterable[tuple[str, Mapping]]) -> dict:
    """Report {law: pass} plus the first counterexample per law."""
    report = {"laws": {law: True for law in LAWS}, "counterexamples": {}, "checked": 0}
    for label, x in elements:
        report["checked"] += 1
        for law, ok in check_element(H, x).items():
            if not ok and report["laws"][law]:
                report["laws"][law] = False
                report["counterexamples"][law] = label
    report["pass"] = all(report["laws"].values())
    return report


def borel_axiom_check(alg: UqBorel, max_height: int, box: int = 1,
                      antipode_override: Callable | None = None) -> dict:
    H = BorelHopf(alg, antipode_override)
    elems = [(f"E^{k} K^{lam}", x.terms) for k, lam, x in H.pbw_basis(max_height, box)]
    return hopf_axiom_check(H, elems)


def graded_coproduct_ok(H: BorelHopf, x: ReducedElement) -> bool:
    """Delta((U+)_eta) lies in sum over mu of (U+)_{eta-mu} K_mu (x) (U+)_mu."""
    alg = H.alg
    degs = x.degrees()
    if len(degs) != 1 or any(any(lam) for (_, lam) in x.terms):
        raise AlgebraError("expects a homogeneous element of U^+")
    eta = degs.pop()
    for ((a, mu), (b, nu)), c in delta(H, x).terms.items():
        if any(nu) or alg.deg(b) != mu or vadd(alg.deg(a), mu) != eta:
            return False
    return True
