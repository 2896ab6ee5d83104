"""Weight modules over U^{>=0}: truncated Verma modules and their tensor products.

Base weights sigma, sigma' are formal symbols.  Tensor products are handled on
the rescaled basis u_{k,l} = sigma^{deg E^l} (E^k v_sigma (x) E^l v_sigma'),
on which the U^+ action has coefficients in Q(q) only.  The ordinary
coefficient of E^k v (x) E^l v' is the rescaled one times sigma^{deg E^l}:
the K-factor of Delta(E) lands on the left tensorand.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import UqBorel, _add_term, vadd, vsub
from .cartan import degrees_up_to_height, height, is_nonneg, kostant_dim
from .hopf import BorelHopf, delta
from .linalg import Echelon


@dataclass(frozen=True)
class WeightSymbol:
    """sigma-monomial times q^{qexp}: coordinate i is prod(base symbols)_i * q^{qexp_i}."""

    base: tuple  # sorted multiset of symbol names
    qexp: tuple

    @staticmethod
    def symbol(name: str, n: int) -> "WeightSymbol":
        return WeightSymbol((name,), (0,) * n)

    @staticmethod
    def epsilon(datum, j: int) -> "WeightSymbol":
        """epsilon_j = (q_j^{a_j1}, ..., q_j^{a_jn}): empty base, qexp row d_j a_j."""
        return WeightSymbol((), tuple(datum.DC[j]))

    def __mul__(self, other: "WeightSymbol") -> "WeightSymbol":
        return WeightSymbol(tuple(sorted(self.base + other.base)), vadd(self.qexp, other.qexp))

    def shift(self, qexp: Sequence[int]) -> "WeightSymbol":
        return WeightSymbol(self.base, vadd(self.qexp, qexp))

    def __str__(self):
        b = "*".join(self.base) or "1"
        if not any(self.qexp):
            return b
        return f"{b}*q^({','.join(str(x) for x in self.qexp)})"


def F_of(datum, eta: Sequence[int]) -> tuple:
    """q-exponent vector of F(eta): coordinate i is sum_j eta_j d_i a_ij."""
    n = datum.rank
    return tuple(sum(datum.DC[i][j] * eta[j] for j in range(n)) for i in range(n))


def weight_of_vector(datum, sigma: WeightSymbol, eta: Sequence[int]) -> WeightSymbol:
    """Weight of E^k v_sigma with deg E^k = eta, i.e. F_sigma(eta)."""
    return sigma.shift(F_of(datum, eta))


def F_sigma_injectivity_check(matrix: Sequence[Sequence[int]], cutoff: int) -> bool:
    """eta -> matrix . eta is injective on {eta in Q+ : ht(eta) <= cutoff}."""
    n = len(matrix)
    seen = {}
    for eta in degrees_up_to_height(n, cutoff):
        img = tuple(sum(matrix[i][j] * eta[j] for j in range(n)) for i in range(n))
        if img in seen:
            return False
        seen[img] = eta
    return True


@dataclass(frozen=True)
class SigmaCoeff:
    """Scalar c * (product of base symbols, coordinate i) * q^e, as produced by K_i."""

    coeff: object
    base: tuple
    qexp: int

    def __str__(self):
        parts = [p for p in (str(self.coeff) if str(self.coeff) != "1" else "", "*".join(self.base),
                             f"q^{self.qexp}" if self.qexp else "") if p]
        return "*".join(parts) or "1"


# -- Verma modules ---------------------------------------------------------------------

class TruncatedVerma:
    """M(sigma) = U^+ v_sigma, with PBW basis E^k v_sigma of height <= cutoff."""

    def __init__(self, alg: UqBorel, sigma: WeightSymbol | str, cutoff: int):
        self.alg = alg
        self.datum = alg.datum
        self.frame = alg.frame
        self.sigma = WeightSymbol.symbol(sigma, alg.n) if isinstance(sigma, str) else sigma
        self.cutoff = cutoff
        self.basis = [k for eta in degrees_up_to_height(alg.n, cutoff)
                      for k in self.frame.pbw_indices(eta)]
        self._left_mul: dict = {}

    def degree(self, k) -> tuple:
        return self.frame.degree(k)

    def weight_of(self, k) -> WeightSymbol:
        return weight_of_vector(self.datum, self.sigma, self.degree(k))

    def weight_set(self) -> set:
        return {self.weight_of(k) for k in self.basis}

    def slice(self, eta) -> list:
        return self.frame.pbw_indices(eta) if height(eta) <= self.cutoff else []

    def E_times(self, i: int, k) -> dict:
        """PBW coordinates of E_i E^k."""
        key = (i, k)
        hit = self._left_mul.get(key)
        if hit is None:
            prod = self.alg.E(i) * self.alg.pbw_monomial(k)
            hit = {kk: c for (kk, lam), c in self.alg.to_pbw(prod).items()}
            self._left_mul[key] = hit
        return hit

    def action(self, gen: tuple, v: Mapping) -> tuple[dict, bool]:
        """gen = ('E', i) or ('K', i, +-1); returns (result, overflow flag).

        K results carry SigmaCoeff values because the eigenvalue involves sigma.
        """
        kind, i = gen[0], gen[1]
        out: dict = {}
        overflow = False
        if kind == "K":
            power = gen[2] if len(gen) > 2 else 1
            for k, c in v.items():
                w = self.weight_of(k)
                out[k] = SigmaCoeff(c, w.base * power if power > 0 else tuple(f"{b}^-1" for b in w.base),
                                    power * w.qexp[i])
            return out, False
        if kind != "E":
            raise ValueError(f"unknown generator {gen!r}")
        target_shift = WeightSymbol.epsilon(self.datum, i)
        for k, c in v.items():
            expect = self.weight_of(k) * target_shift
            for kk, x in self.E_times(i, k).items():
                if self.frame.pbw_height(kk) > self.cutoff:
                    overflow = True
                    continue
                if self.weight_of(kk) != expect:
                    raise AssertionError("E_j does not map the (tau) slice into the (epsilon_j tau) slice")
                _add_term(out, kk, c * x)
        return out, overflow

    def maximal_submodule(self) -> list:
        """Basis of J(sigma): every E^k v_sigma with k != 0."""
        return [k for k in self.basis if any(k)]

    def quotient_weight(self) -> WeightSymbol:
        rest = set(self.maximal_submodule())
        left = [k for k in self.basis if k not in rest]
        assert len(left) == 1
        return self.weight_of(left[0])

    def minimal_weight(self) -> WeightSymbol:
        """The weight tau with every weight of the truncation equal to tau F(eta), eta in Q+."""
        ws = self.weight_set()
        for tau in ws:
            if all(_is_q_plus_shift(self.datum, tau, w) for w in ws):
                return tau
        raise AssertionError("no minimal weight")


def _solve_rational(M, b) -> list | None:
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] for i in range(n)]


def _is_q_plus_shift(datum, tau: WeightSymbol, w: WeightSymbol) -> bool:
    if tau.base != w.base:
        return False
    eta = _solve_rational(datum.DC, vsub(w.qexp, tau.qexp))
    return eta is not None and all(x.denominator == 1 and x >= 0 for x in eta)


# -- tensor products ------------------------------------------------------------------

class TensorSlice:
    """M(sigma) (x) M(sigma') truncated at total height <= cutoff, rescaled basis u_{k,l}."""

    def __init__(self, left: TruncatedVerma, right: TruncatedVerma):
        if left.cutoff != right.cutoff or left.alg is not right.alg:
            raise ValueError("factors must share the algebra and the cutoff")
        self.left = left
        self.right = right
        self.alg = left.alg
        self.frame = left.frame
        self.cutoff = left.cutoff
        self.hopf = BorelHopf(self.alg)

    @property
    def n(self) -> int:
        return self.alg.n

    def slice_basis(self, zeta) -> list:
        out = []
        for eta in degrees_up_to_height(self.n, height(zeta)):
            rest = vsub(zeta, eta)
            if not is_nonneg(rest):
                continue
            for k in self.frame.pbw_indices(eta):
                for l in self.frame.pbw_indices(rest):
                    out.append((k, l))
        return out

    def slice_weight(self, zeta) -> WeightSymbol:
        return weight_of_vector(self.alg.datum, self.left.sigma * self.right.sigma, zeta)

    def expected_slice_dim(self, zeta) -> int:
        """Convolution of factor slice dimensions."""
        total = 0
        for eta in degrees_up_to_height(self.n, height(zeta)):
            rest = vsub(zeta, eta)
            if is_nonneg(rest):
                total += kostant_dim(self.frame, eta) * kostant_dim(self.frame, rest)
        return total

    def action(self, gen: tuple, v: Mapping) -> tuple[dict, bool]:
        """Delta(E_i) = E_i (x) 1 + K_i (x) E_i on rescaled coordinates.

        E_i u_{k,l} = u_{E_i E^k, l} + q^{<alpha_i, deg E^k>} u_{k, E_i E^l}.
        """
        kind, i = gen[0], gen[1]
        if kind == "K":
            power = gen[2] if len(gen) > 2 else 1
            out = {}
            for (k, l), c in v.items():
                w = weight_of_vector(self.alg.datum, self.left.sigma * self.right.sigma,
                                     vadd(self.frame.degree(k), self.frame.degree(l)))
                out[(k, l)] = SigmaCoeff(c, w.base if power > 0 else tuple(f"{b}^-1" for b in w.base),
                                         power * w.qexp[i])
            return out, False
        out: dict = {}
        overflow = False
        alpha = self.alg.alpha(i)
        for (k, l), c in v.items():
            hk = self.frame.pbw_height(k) + self.frame.pbw_height(l) + 1
            if hk > self.cutoff:
                overflow = True
                continue
            for kk, x in self.left.E_times(i, k).items():
                _add_term(out, (kk, l), c * x)
            e = self.alg.pairing(alpha, self.frame.degree(k))
            qe = self.alg.q(e)
            for ll, x in self.right.E_times(i, l).items():
                _add_term(out, (k, ll), c * x * qe)
        return out, overflow

    def standard_coefficients(self, v: Mapping) -> dict:
        """Ordinary coefficients: rescaled coefficient times sigma^{deg E^l}."""
        out = {}
        for (k, l), c in v.items():
            deg = self.frame.degree(l)
            base = tuple(f"{s}_{i + 1}^{m}" if m > 1 else f"{s}_{i + 1}"
                         for s in self.left.sigma.base for i, m in enumerate(deg) if m)
            out[(k, l)] = SigmaCoeff(c, base, 0)
        return out

    def lowest_weight_generators(self) -> list:
        """E^k v_sigma (x) v_sigma' for every k with height <= cutoff."""
        zero = (0,) * self.frame.N
        return [(k, zero) for k in self.left.basis]

    def act_plus(self, m: tuple, gen: tuple) -> dict:
        """E^m . u_{k,l} through Delta(E^m)."""
        k, l = gen
        alg = self.alg
        out: dict = {}
        x = alg.pbw_monomial(m)
        dk = self.frame.degree(k)
        for ((a, nu), (b, _)), c in delta(self.hopf, x).terms.items():
            cq = c * alg.q(alg.pairing(nu, dk)) if any(nu) and any(dk) else c
            left = alg.to_pbw(_red(alg, a) * alg.pbw_monomial(k))
            right = alg.to_pbw(_red(alg, b) * alg.pbw_monomial(l))
            for (kk, _), y in left.items():
                for (ll, _), z in right.items():
                    _add_term(out, (kk, ll), cq * y * z)
        return out

    def decompose(self) -> "DecompositionReport":
        return decompose_tensor(self)


def _red(alg: UqBorel, word):
    from .algebra import ReducedElement
    return ReducedElement(alg, {(word, alg.zero_weight): alg.ctx.one()})


@dataclass
class SliceReport:
    degree: tuple
    weight: str
    dim: int
    expected_dim: int
    generator_ranks: dict
    rank: int
    spanning_count: int
    lowest_weight_ok: bool

    @property
    def direct(self) -> bool:
        return self.rank == self.spanning_count

    @property
    def exhaustive(self) -> bool:
        return self.rank == self.dim

    @property
    def passed(self) -> bool:
        return self.direct and self.exhaustive and self.dim == self.expected_dim and self.lowest_weight_ok

    def to_json(self) -> dict:
        return {"degree": list(self.degree), "weight": self.weight, "dim": self.dim,
                "generator_ranks": [{"k": list(k), "rank": r} for k, r in sorted(self.generator_ranks.items())],
                "rank": self.rank, "direct": self.direct, "exhaustive": self.exhaustive,
                "lowest_weight": self.lowest_weight_ok, "pass": self.passed}


@dataclass
class DecompositionReport:
    slices: list = field(default_factory=list)
    multiplicities: dict = field(default_factory=dict)  # eta -> number of generators of degree eta
    expected_multiplicities: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.slices) and self.multiplicities == self.expected_multiplicities

    def failures(self) -> list:
        return [s for s in self.slices if not s.passed]

    def to_json(self) -> dict:
        return {"slices": [s.to_json() for s in self.slices],
                "multiplicities": [{"eta": list(e), "count": c, "expected": self.expected_multiplicities.get(e)}
                                   for e, c in sorted(self.multiplicities.items())],
                "pass": self.passed}


def decompose_tensor(T: TensorSlice) -> DecompositionReport:
    """Rank checks for M(sigma) (x) M(sigma') = direct sum of U^{>=0}(E^k v (x) v')."""
    frame = T.frame
    gens = T.lowest_weight_generators()
    report = DecompositionReport()
    counts = Counter(frame.degree(k) for k, _ in gens)
    report.multiplicities = dict(counts)
    report.expected_multiplicities = {eta: kostant_dim(frame, eta)
                                      for eta in degrees_up_to_height(T.n, T.cutoff)}
    for zeta in degrees_up_to_height(T.n, T.cutoff):
        basis = T.slice_basis(zeta)
        ech = Echelon({b: i for i, b in enumerate(basis)})
        ranks = {}
        spanning = 0
        for g in gens:
            dg = frame.degree(g[0])
            rest = vsub(zeta, dg)
            if not is_nonneg(rest):
                continue
            sub = Echelon({b: i for i, b in enumerate(basis)})
            for m in frame.pbw_indices(rest):
                vec = T.act_plus(m, g)
                spanning += 1
                sub.add(vec)
                ech.add(vec)
            ranks[g[0]] = len(sub)
        # contrapositive lowest-weight check: top generators independent modulo E_i . (lower slices)
        lower = Echelon({b: i for i, b in enumerate(basis)})
        for i in range(T.n):
            prev = vsub(zeta, T.alg.alpha(i))
            if not is_nonneg(prev):
                continue
            for b in T.slice_basis(prev):
                img, _ = T.action(("E", i), {b: T.alg.ctx.one()})
                lower.add(img)
        base_rank = len(lower)
        top = [g for g in gens if frame.degree(g[0]) == zeta]
        for g in top:
            lower.add({g: T.alg.ctx.one()})
        lw_ok = len(lower) == base_rank + len(top)
        report.slices.append(SliceReport(zeta, str(T.slice_weight(zeta)), len(basis),
                                         T.expected_slice_dim(zeta), ranks, len(ech), spanning, lw_ok))
    return report


def tensor_of_vermas(alg: UqBorel, cutoff: int, left: str = "s", right: str = "s'") -> TensorSlice:
    return TensorSlice(TruncatedVerma(alg, left, cutoff), TruncatedVerma(alg, right, cutoff))
