"""Quasi-cocommutativity: constraint systems for degree-zero R-matrices.

An R of the form sum a_{j,l} K^j (x) K^l satisfies R Delta(E_i) = Delta^op(E_i) R
iff for every generator index i

    a_{j,l} = q^{(DC l)_i} a_{j-e_i,l}      and      a_{j,l} = q^{(DC j)_i} a_{j,l+e_i}.

Box mode (generic q): unknowns on [-B, B]^n x [-B, B]^n, with every unknown
outside the box equal to zero.  Modular mode (finite quotient): indices in
(Z/d)^n, exponents computed on representatives 0..d-1 and reduced mod r.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .algebra import ReducedElement, UqBorel, _add_term
from .cartan import CartanDatum, cartan_datum
from .hopf import BorelHopf, Tensor, delta
from .linalg import Echelon
from .quotient import FiniteHopf, QuotientError, QuotientSpec, quotient_spec, tensor_solve_inverse
from .scalars import GENERIC, ScalarContext


def bilinear_A(datum: CartanDatum, j: Sequence[int], l: Sequence[int]) -> int:
    """A(j, l) = j (DC) l^t."""
    return datum.pairing(j, l)


def _unit(n: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(n))


def _dc_row(datum: CartanDatum, i: int, v: Sequence[int]) -> int:
    return sum(datum.DC[i][k] * v[k] for k in range(datum.rank))


@dataclass(frozen=True)
class Equation:
    """a_x = q^e * a_y; y is None when the referenced unknown is forced to zero."""

    x: tuple
    e: int
    y: tuple | None


def build_constraints(datum: CartanDatum, mode: str, size: int, r: int | None = None,
                      generators: Iterable[int] | None = None) -> tuple[list, list[Equation]]:
    """Unknowns and two-term equations for Box(size) or Modular(size = d)."""
    n = datum.rank
    gens = range(n) if generators is None else list(generators)
    if mode == "box":
        rng = range(-size, size + 1)
    elif mode == "modular":
        rng = range(size)
    else:
        raise ValueError(f"unknown support mode {mode!r}")
    unknowns = [(j, l) for j in product(rng, repeat=n) for l in product(rng, repeat=n)]
    inside = set(unknowns)
    eqs: list[Equation] = []

    def wrap(v):
        return tuple(x % size for x in v) if mode == "modular" else v

    def red(e):
        return e % r if r else e

    for i in gens:
        ei = _unit(n, i)
        for (j, l) in unknowns:
            # first family: a_{j,l} = q^{(DC l)_i} a_{j-e_i,l}
            y = (wrap(tuple(a - b for a, b in zip(j, ei))), l)
            eqs.append(Equation((j, l), red(_dc_row(datum, i, l)), y if y in inside else None))
            # second family: a_{j,l} = q^{(DC j)_i} a_{j,l+e_i}
            y = (j, wrap(tuple(a + b for a, b in zip(l, ei))))
            eqs.append(Equation((j, l), red(_dc_row(datum, i, j)), y if y in inside else None))
            if mode == "box":
                # referenced index inside, equation's own index outside: forces a_y = 0
                for (jj, ll) in (((tuple(a + b for a, b in zip(j, ei))), l),
                                 (j, tuple(a - b for a, b in zip(l, ei)))):
                    if (jj, ll) not in inside:
                        eqs.append(Equation((j, l), 0, None))
    return unknowns, eqs


def kernel_dim_exact(unknowns: list, eqs: list[Equation], ctx: ScalarContext) -> int:
    """Dimension of the solution space by exact row reduction."""
    order = {u: k for k, u in enumerate(unknowns)}
    ech = Echelon(order)
    for eq in eqs:
        row = {eq.x: ctx.one()}
        if eq.y is not None:
            _add_term(row, eq.y, -ctx.q_pow(eq.e))
        ech.add(row)
    return len(unknowns) - len(ech)


def propagate(unknowns: list, eqs: list[Equation], r: int | None) -> tuple[int, dict]:
    """Graph solver: a_x = q^{m_x} a_root per component; returns (kernel dim, multipliers).

    A component is killed if a cycle carries q^e != 1 or it touches a forced zero.
    Exponents are integers (generic) or residues mod r.
    """
    adj: dict = {u: [] for u in unknowns}
    dead = set()
    for eq in eqs:
        if eq.y is None:
            dead.add(eq.x)
        else:
            adj[eq.x].append((eq.y, -eq.e))  # a_y = q^{-e} a_x
            adj[eq.y].append((eq.x, eq.e))
    mult: dict = {}
    alive_roots = 0
    for root in unknowns:
        if root in mult:
            continue
        mult[root] = 0
        comp = [root]
        ok = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, e in adj[u]:
                m = mult[u] + e
                if r:
                    m %= r
                if v not in mult:
                    mult[v] = m
                    comp.append(v)
                    queue.append(v)
                elif mult[v] != m:
                    ok = False
        if ok and not any(u in dead for u in comp):
            alive_roots += 1
        else:
            for u in comp:
                mult[u] = None
    return alive_roots, mult


def solve_generic(datum: CartanDatum, B: int, generators: Iterable[int] | None = None,
                  method: str = "exact") -> int:
    """Kernel dimension of the Box(B) system over Q(q)."""
    unknowns, eqs = build_constraints(datum, "box", B, None, generators)
    if method == "exact":
        return kernel_dim_exact(unknowns, eqs, GENERIC)
    return propagate(unknowns, eqs, None)[0]


@dataclass
class FiniteSolution:
    spec: QuotientSpec
    valid: bool
    kernel_dim: int | None = None
    consistent: bool | None = None
    invertible_exists: bool | None = None
    witness: dict | None = None  # (j, l) -> Cyclotomic, with a_00 = 1
    group_invertible: bool | None = None
    checks: list = field(default_factory=list)  # internal cross-checks that were run
    skipped: list = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        out = {"case": {"type": self.spec.datum.name, "r": self.spec.r, "d": self.spec.d,
                        "d0": self.spec.d0},
               "valid": self.valid, "kernel_dim": self.kernel_dim,
               "invertible_exists": self.invertible_exists,
               "consistent": self.consistent, "group_invertible": self.group_invertible,
               "checks": self.checks, "skipped_checks": self.skipped}
        if self.note:
            out["note"] = self.note
        if self.witness is not None:
            out["witness"] = [{"j": list(j), "l": list(l), "a": str(c)}
                              for (j, l), c in sorted(self.witness.items())]
        return out


def consistency_conditions(datum: CartanDatum, d: int, r: int) -> bool:
    """q^{2 A(j,l)} = 1 for every j, l in (Z/d)^n."""
    rng = range(d)
    for j in product(rng, repeat=datum.rank):
        for l in product(rng, repeat=datum.rank):
            if (2 * bilinear_A(datum, j, l)) % r:
                return False
    return True


def group_algebra_invertible(datum: CartanDatum, d: int, ctx: ScalarContext, coeffs: dict) -> bool:
    """Decide invertibility of sum a_{j,l} K^j (x) K^l in k[(Z/d)^n x (Z/d)^n] by exact solve."""
    from .linalg import solve
    n = datum.rank
    elems = [(j, l) for j in product(range(d), repeat=n) for l in product(range(d), repeat=n)]

    # (R X)_g = sum_h a_h x_{g - h}
    rows = []
    zero = ((0,) * n, (0,) * n)
    rhs = []
    for g in elems:
        row = {}
        for h, a in coeffs.items():
            src = (tuple((x - y) % d for x, y in zip(g[0], h[0])), tuple((x - y) % d for x, y in zip(g[1], h[1])))
            _add_term(row, src, a)
        rows.append(row)
        rhs.append(ctx.one() if g == zero else 0)
    return solve(rows, rhs, elems) is not None


def solve_finite(spec: QuotientSpec, exact_limit: int = 20000) -> FiniteSolution:
    if not spec.valid:
        return FiniteSolution(spec, False, note="invalid: not a Hopf algebra (d <= d0)")
    datum, d, r = spec.datum, spec.d, spec.r
    ctx = ScalarContext(r)
    unknowns, eqs = build_constraints(datum, "modular", d, r)
    kdim, mult = propagate(unknowns, eqs, r)
    sol = FiniteSolution(spec, True, kernel_dim=kdim)
    if len(unknowns) <= exact_limit:
        kx = kernel_dim_exact(unknowns, eqs, ctx)
        sol.checks.append({"name": "row_reduction_agrees", "pass": kx == kdim})
    else:
        sol.skipped.append(f"row_reduction_agrees ({len(unknowns)} unknowns > {exact_limit})")
    sol.consistent = consistency_conditions(datum, d, r)
    if not spec.k_central:
        sol.note = "K^d is not central (q^(d*DC) != 1); the quotient algebra degenerates"
    if kdim == 0:
        sol.invertible_exists = False
        return sol
    zero = (0,) * datum.rank
    root = (zero, zero)
    base = mult[root]
    if base is None:
        sol.invertible_exists = False
        return sol
    # canonical chain: a_{j,l} = q^{-A(j,l)} a_00
    chain_ok = all(m is not None and (m - base - (-bilinear_A(datum, j, l))) % r == 0
                   for (j, l), m in mult.items())
    sol.checks.append({"name": "canonical_chain", "pass": chain_ok})
    coeffs = {(j, l): ctx.q_pow(-bilinear_A(datum, j, l)) for (j, l) in unknowns}
    inv = group_algebra_invertible(datum, d, ctx, coeffs)
    sol.group_invertible = inv
    sol.invertible_exists = bool(inv and chain_ok)
    if sol.invertible_exists:
        sol.witness = coeffs
    return sol


def witness_tensor(H: FiniteHopf, coeffs: dict, scale=1) -> Tensor:
    """R = scale * sum a_{j,l} K^j (x) K^l as a tensor over the quotient."""
    out: dict = {}
    s = H.ctx.coerce(scale)
    for (j, l), c in coeffs.items():
        _add_term(out, (H.group_like(j), H.group_like(l)), c * s)
    return Tensor(H, 2, out)


def sweedler_R(H: FiniteHopf) -> Tensor:
    """1/2 (1 (x) 1 + 1 (x) K + K (x) 1 - K (x) K)."""
    half = H.ctx.from_fraction(Fraction(1, 2))
    one, K = H.group_like((0,)), H.group_like((1,))
    return Tensor(H, 2, {(one, one): half, (one, K): half, (K, one): half, (K, K): -half})


def verify_qcc(H: FiniteHopf, R: Tensor, max_height: int | None = None) -> dict:
    """Check R Delta(h) = Delta^op(h) R on generators and basis elements; invertibility of R."""
    if max_height is None:
        max_height = H.d * H.N
    elems = list(dict.fromkeys(H.generators() + H.basis_up_to_height(max_height)))
    failures = []
    for m in elems:
        d = delta(H, {m: H.ctx.one()})
        if R * d != d.flip() * R:
            failures.append(H.mono_str(m))
    X = tensor_solve_inverse(H, R, "right")
    Y = tensor_solve_inverse(H, R, "left")
    invertible = X is not None and Y is not None and X == Y
    return {"intertwines": not failures, "failures": failures, "invertible": invertible,
            "checked": len(elems), "pass": not failures and invertible}


def project_degree_zero(R: Tensor) -> Tensor:
    """Keep the terms whose two factors both have E-degree zero."""
    H = R.H
    return Tensor(H, R.arity, {key: c for key, c in R.terms.items()
                               if all(H.mono_degree_zero(m) for m in key)})


def classify(grid: Iterable[tuple[str, int]]) -> list[FiniteSolution]:
    out = []
    for type_name, r in grid:
        datum = cartan_datum(type_name)
        out.append(solve_finite(quotient_spec(datum, r)))
    return out


DEFAULT_GRID = [("A1", r) for r in (3, 4, 5, 6, 8)] + [("A2", r) for r in (3, 4, 5, 7)] + \
    [("B2", r) for r in (5, 6, 8)] + [("G2", r) for r in (7, 8, 9)]
