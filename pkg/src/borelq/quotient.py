"""The finite quotient u^{>=0} = U^{>=0} / (K_i^d - 1, E_i^d) at a primitive r-th root of unity.

Structure constants are obtained from the generic algebra: products,
coproducts and antipodes are computed over Q(q) in PBW coordinates, then
evaluated at q = z_r.  PBW monomials with an exponent >= d are dropped and
K-exponents are reduced mod d.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Mapping

from .algebra import AlgebraError, UqBorel, _add_term, format_k, vadd
from .cartan import CartanDatum, PositiveRootFrame, default_frame, kostant_dim  # noqa: F401
from .hopf import BorelHopf, Tensor, delta, linear
from .scalars import GENERIC, ScalarContext, ScalarError


class QuotientError(ValueError):
    pass


@dataclass(frozen=True)
class QuotientSpec:
    datum: CartanDatum
    r: int

    @property
    def d(self) -> int:
        return self.r if self.r % 2 else self.r // 2

    @property
    def d0(self) -> int:
        return self.datum.d0

    @property
    def valid(self) -> bool:
        """d > d0: the quotient is a graded Hopf algebra."""
        return self.d > self.d0

    @property
    def k_central(self) -> bool:
        """q^{d (DC)_ij} = 1 for all i, j, i.e. K_i^d commutes with every E_j.

        When this fails, K_i^d = 1 forces some E_j = 0 and the quotient degenerates.
        """
        return all((self.d * x) % self.r == 0 for row in self.datum.DC for x in row)

    @property
    def name(self) -> str:
        return f"{self.datum.name}, r={self.r}"


def quotient_spec(datum: CartanDatum, r: int) -> QuotientSpec:
    if r < 3:
        raise QuotientError("r must be at least 3")
    return QuotientSpec(datum, r)


class FiniteHopf:
    """u^{>=0} with basis E^k K^lam, 0 <= k_s < d, lam in (Z/d)^n."""

    def __init__(self, spec: QuotientSpec, frame: PositiveRootFrame | None = None,
                 generic: UqBorel | None = None):
        if not spec.valid:
            raise QuotientError(f"{spec.name}: d = {spec.d} <= d0 = {spec.d0}, not a Hopf algebra")
        if not spec.k_central:
            raise QuotientError(
                f"{spec.name}: q^(d*DC) != 1, so K^d = 1 forces E = 0 and the quotient degenerates")
        self.spec = spec
        self.d = spec.d
        self.ctx = ScalarContext(spec.r)
        self.gen = generic if generic is not None else UqBorel(spec.datum, GENERIC, frame)
        self.gen_hopf = BorelHopf(self.gen)
        self.n = spec.datum.rank
        self.N = self.gen.frame.N
        self.unit = ((0,) * self.N, (0,) * self.n)
        self._mul_memo: dict = {}
        self._delta_memo: dict = {}
        self._S_memo: dict = {}
        self._Sinv_memo: dict = {}

    # -- basis
    @property
    def dim(self) -> int:
        return self.d ** (self.N + self.n)

    def basis(self):
        rng = range(self.d)
        for k in product(rng, repeat=self.N):
            for lam in product(rng, repeat=self.n):
                yield (k, lam)

    def height(self, m) -> int:
        return self.gen.frame.pbw_height(m[0])

    def basis_up_to_height(self, h: int) -> list:
        return [m for m in self.basis() if self.height(m) <= h]

    def group_like(self, lam) -> tuple:
        return ((0,) * self.N, tuple(x % self.d for x in lam))

    def E(self, i: int) -> tuple:
        pos = self.gen.frame.simple_positions()[i]
        return (tuple(1 if s == pos else 0 for s in range(self.N)), (0,) * self.n)

    def K(self, i: int, power: int = 1) -> tuple:
        return self.group_like(tuple(power if j == i else 0 for j in range(self.n)))

    def generators(self) -> list:
        return [self.E(i) for i in range(self.n)] + [self.K(i) for i in range(self.n)]

    def mono_str(self, m) -> str:
        k, lam = m
        parts = []
        for s, ks in enumerate(k):
            if ks:
                parts.append(f"E[{s + 1}]" + (f"^{ks}" if ks > 1 else ""))
        kp = format_k(lam)
        if kp:
            parts.append(kp)
        return "*".join(parts) or "1"

    # -- specialisation
    def _spec(self, c):
        try:
            return self.ctx.coerce(c)
        except ScalarError as exc:
            raise QuotientError(f"structure constant {c} has a pole at the root of unity") from exc

    def _from_generic(self, pbw: Mapping) -> dict:
        """Map generic PBW coordinates {(k, lam): c} into the quotient."""
        out: dict = {}
        d = self.d
        for (k, lam), c in pbw.items():
            if any(x >= d for x in k):
                continue
            x = self._spec(c)
            if x:
                _add_term(out, (k, tuple(v % d for v in lam)), x)
        return out

    def _generic(self, m):
        k, lam = m
        return self.gen.pbw_monomial(k, lam)

    # -- HopfStructure interface
    def mono_mul(self, m1, m2) -> dict:
        (k1, l1), (k2, l2) = m1, m2
        part = self._mul_memo.get((k1, k2))
        if part is None:
            if not any(k1) or not any(k2):
                part = {(vadd(k1, k2), (0,) * self.n): self.ctx.one()}
                if any(x >= self.d for x in vadd(k1, k2)):
                    part = {}
            else:
                prod_ = self.gen._pbw_plus(k1) * self.gen._pbw_plus(k2)
                part = self._from_generic(self.gen.to_pbw(prod_))
            self._mul_memo[(k1, k2)] = part
        if not part:
            return {}
        e = self.gen.pairing(l1, self.gen.frame.degree(k2))
        c0 = self.ctx.q_pow(e)
        lam = tuple((a + b) % self.d for a, b in zip(l1, l2))
        return {(k, lam): c * c0 for (k, _), c in part.items()}

    def mono_delta(self, m) -> dict:
        hit = self._delta_memo.get(m)
        if hit is not None:
            return hit
        gen = self.gen
        dg = delta(self.gen_hopf, self._generic(m))
        out: dict = {}
        for (a, b), c in dg.terms.items():
            la = self._from_generic(gen.to_pbw(_single(gen, a)))
            lb = self._from_generic(gen.to_pbw(_single(gen, b)))
            cc = self._spec(c)
            for ma, x in la.items():
                for mb, y in lb.items():
                    _add_term(out, (ma, mb), cc * x * y)
        self._delta_memo[m] = out
        return out

    def mono_counit(self, m):
        return self.ctx.one() if not any(m[0]) else self.ctx.zero()

    def mono_degree_zero(self, m) -> bool:
        return not any(m[0])

    def _via_generic(self, m, memo, fn) -> dict:
        hit = memo.get(m)
        if hit is not None:
            return hit
        x = fn(self.gen_hopf, self._generic(m))
        from .algebra import ReducedElement
        out = self._from_generic(self.gen.to_pbw(ReducedElement(self.gen, x)))
        memo[m] = out
        return out

    def mono_antipode(self, m) -> dict:
        from .hopf import antipode
        return self._via_generic(m, self._S_memo, antipode)

    def mono_antipode_inv(self, m) -> dict:
        from .hopf import antipode_inv
        return self._via_generic(m, self._Sinv_memo, antipode_inv)

    # -- element helpers
    def mul(self, a: Mapping, b: Mapping) -> dict:
        from .hopf import mul
        return mul(self, a, b)

    def element(self, m, c=1) -> dict:
        return {m: self.ctx.coerce(c)}

    def fmt(self, a: Mapping) -> str:
        from .algebra import _fmt_coeff, _fmt_sum
        return _fmt_sum([_fmt_coeff(c, self.mono_str(m)) for m, c in sorted(a.items())])

    @cached_property
    def group_likes(self) -> list:
        return [((0,) * self.N, lam) for lam in product(range(self.d), repeat=self.n)]


def _single(gen: UqBorel, m):
    from .algebra import ReducedElement
    return ReducedElement(gen, {m: 1})


def build_finite_hopf(spec: QuotientSpec, frame: PositiveRootFrame | None = None) -> FiniteHopf:
    return FiniteHopf(spec, frame)


def tensor_solve_inverse(H: FiniteHopf, R: Tensor, side: str = "right") -> Tensor | None:
    """X with R X = 1 (x) 1 (side='right') or X R = 1 (x) 1 (side='left'), by exact linear solve."""
    from .linalg import solve
    basis = list(H.basis())
    cols = [(a, b) for a in basis for b in basis]
    images = {}
    for col in cols:
        unit = Tensor(H, 2, {col: H.ctx.one()})
        images[col] = (R * unit if side == "right" else unit * R).terms
    row_keys = cols
    rows = []
    for rk in row_keys:
        rows.append({col: im[rk] for col, im in images.items() if rk in im})
    one = (H.unit, H.unit)
    rhs = [1 if rk == one else 0 for rk in row_keys]
    x = solve(rows, rhs, cols)
    if x is None:
        return None
    return Tensor(H, 2, {k: H.ctx.coerce(v) for k, v in x.items() if v})


def linear_on(H, fn, a: Mapping) -> dict:
    return linear(fn, a)
