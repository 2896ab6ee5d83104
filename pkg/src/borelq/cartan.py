"""Cartan data, Weyl groups, ordered positive roots and the Kostant partition function.

Cartan matrices use Humphreys' numbering; entries are read with the
convention d_i a_ij = d_j a_ji, which reproduces DC = [[6,-3],[-3,2]] for G2.
Root-lattice vectors are integer tuples in the simple-root basis.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd, lcm
from typing import Sequence

RootVec = tuple  # tuple[int, ...], coordinates over alpha_1..alpha_n
Matrix = tuple  # tuple of row tuples

WEYL_GUARD = 10**6


class CartanError(ValueError):
    pass


def _cartan_matrix(series: str, n: int) -> list[list[int]]:
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a_ij=-1, a_ji=-1):
        C[i][j] = a_ij
        C[j][i] = a_ji

    if series == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif series == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif series == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif series == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif series == "E":
        # Bourbaki: 1-3-4-5-6(-7-8), with 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif series == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif series == "G":
        link(0, 1, -1, -3)
    return C


_VALID = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: 6 <= n <= 8,
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _minimal_symmetrizer(C: list[list[int]]) -> tuple[int, ...]:
    n = len(C)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j != i and C[i][j] != 0 and d[j] is None:
                # d_i a_ij = d_j a_ji
                d[j] = d[i] * C[i][j] / C[j][i]
                queue.append(j)
    if any(x is None for x in d):
        raise CartanError("Cartan matrix is not indecomposable")
    m = reduce(lcm, (x.denominator for x in d), 1)
    ints = [int(x * m) for x in d]
    g = reduce(gcd, ints)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class CartanDatum:
    series: str
    rank: int
    C: Matrix
    D: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @cached_property
    def DC(self) -> Matrix:
        n = self.rank
        return tuple(tuple(self.D[i] * self.C[i][j] for j in range(n)) for i in range(n))

    @property
    def d0(self) -> int:
        return max(self.D)

    def pairing(self, lam: Sequence[int], eta: Sequence[int]) -> int:
        """lam^T (DC) eta; K_lam E K_lam^-1 = q^pairing(lam, deg E) E."""
        dc = self.DC
        n = self.rank
        return sum(lam[i] * dc[i][j] * eta[j] for i in range(n) if lam[i] for j in range(n) if eta[j])

    def simple_root(self, i: int) -> RootVec:
        """alpha_i, 0-based index."""
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def zero(self) -> RootVec:
        return (0,) * self.rank


def cartan_datum(series: str, rank: int | None = None) -> CartanDatum:
    """Build a datum from ("A", 2) or from a type string such as "G2"."""
    if rank is None:
        series, rank = parse_type(series)
    series = series.upper()
    if series not in _VALID or not _VALID[series](rank):
        raise CartanError(f"invalid simple type {series}{rank}")
    C = _cartan_matrix(series, rank)
    D = _minimal_symmetrizer(C)
    return CartanDatum(series, rank, tuple(tuple(r) for r in C), D)


def parse_type(text: str) -> tuple[str, int]:
    text = text.strip()
    if len(text) < 2 or not text[0].isalpha() or not text[1:].isdigit():
        raise CartanError(f"cannot parse type {text!r}; expected e.g. A2 or G2")
    return text[0].upper(), int(text[1:])


# -- Weyl group ---------------------------------------------------------------

def _check_index(datum: CartanDatum, i: int) -> None:
    if not 0 <= i < datum.rank:
        raise CartanError(f"simple reflection index {i + 1} out of range 1..{datum.rank}")


def reflect_root(datum: CartanDatum, i: int, v: Sequence[int]) -> RootVec:
    """gamma_i v = v - <v> alpha_i with gamma_i alpha_j = alpha_j - a_ij alpha_i (0-based i)."""
    _check_index(datum, i)
    coef = sum(datum.C[i][j] * v[j] for j in range(datum.rank))
    out = list(v)
    out[i] -= coef
    return tuple(out)


def _mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _reflection_matrix(datum: CartanDatum, i: int) -> Matrix:
    n = datum.rank
    cols = [reflect_root(datum, i, datum.simple_root(j)) for j in range(n)]
    return tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_apply(M: Matrix, v: Sequence[int]) -> RootVec:
    return tuple(sum(M[r][c] * v[c] for c in range(len(v))) for r in range(len(M)))


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    reduced_word: tuple[int, ...]  # 0-based generator indices

    @property
    def length(self) -> int:
        return len(self.reduced_word)

    def word1(self) -> tuple[int, ...]:
        """Reduced word with 1-based indices, as printed."""
        return tuple(i + 1 for i in self.reduced_word)


def simple_reflection(datum: CartanDatum, i: int) -> WeylElement:
    _check_index(datum, i)
    return WeylElement(_reflection_matrix(datum, i), (i,))


@lru_cache(maxsize=None)
def weyl_group(datum: CartanDatum, guard: int = WEYL_GUARD) -> tuple[WeylElement, ...]:
    """All elements, BFS by length; each carries its shortlex-minimal reduced word."""
    n = datum.rank
    gens = [_reflection_matrix(datum, i) for i in range(n)]
    seen = {_identity(n): ()}
    level = [_identity(n)]
    out = [WeylElement(_identity(n), ())]
    while level:
        nxt = []
        for M in level:  # level is in lexicographic order of words
            w = seen[M]
            for i in range(n):
                N = _mat_mul(M, gens[i])
                if N not in seen:
                    seen[N] = w + (i,)
                    nxt.append(N)
                    if len(seen) > guard:
                        raise CartanError(f"Weyl group exceeds guard {guard}")
        nxt.sort(key=lambda N: seen[N])
        out.extend(WeylElement(N, seen[N]) for N in nxt)
        level = nxt
    return tuple(out)


def longest_element(datum: CartanDatum) -> WeylElement:
    W = weyl_group(datum)
    top = max(w.length for w in W)
    tops = [w for w in W if w.length == top]
    assert len(tops) == 1
    return tops[0]


def word_matrix(datum: CartanDatum, word: Sequence[int]) -> Matrix:
    M = _identity(datum.rank)
    for i in word:
        M = _mat_mul(M, _reflection_matrix(datum, i))
    return M


def height(v: Sequence[int]) -> int:
    return sum(v)


def is_nonneg(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v)


# -- ordered positive roots -----------------------------------------------------

@dataclass(frozen=True)
class PositiveRootFrame:
    datum: CartanDatum
    w0_word: tuple[int, ...]  # 0-based
    betas: tuple[RootVec, ...]
    _index: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def N(self) -> int:
        return len(self.betas)

    @property
    def rank(self) -> int:
        return self.datum.rank

    def degree(self, k: Sequence[int]) -> RootVec:
        n = self.datum.rank
        out = [0] * n
        for ks, b in zip(k, self.betas):
            if ks:
                for i in range(n):
                    out[i] += ks * b[i]
        return tuple(out)

    def pbw_height(self, k: Sequence[int]) -> int:
        return sum(ks * height(b) for ks, b in zip(k, self.betas))

    def pbw_indices(self, eta: Sequence[int]) -> list[tuple[int, ...]]:
        """All k with sum k_s beta_s = eta, in lexicographic order."""
        return _pbw_indices(self, tuple(eta))

    def simple_positions(self) -> dict[int, int]:
        """t -> s with beta_s = alpha_t."""
        out = {}
        for s, b in enumerate(self.betas):
            if height(b) == 1:
                out[b.index(1)] = s
        return out


def positive_root_frame(datum: CartanDatum, word: Sequence[int] | None = None,
                        one_based: bool = False) -> PositiveRootFrame:
    w0 = longest_element(datum)
    if word is None:
        word = w0.reduced_word
    else:
        word = tuple(i - 1 for i in word) if one_based else tuple(word)
        for i in word:
            _check_index(datum, i)
        if len(word) != w0.length or word_matrix(datum, word) != w0.matrix:
            raise CartanError(f"{tuple(i + 1 for i in word)} is not a reduced word for w0")
    betas = []
    M = _identity(datum.rank)
    for i in word:
        betas.append(mat_apply(M, datum.simple_root(i)))
        M = _mat_mul(M, _reflection_matrix(datum, i))
    if len(set(betas)) != len(betas) or not all(is_nonneg(b) for b in betas):
        raise CartanError("word does not produce distinct positive roots")
    return PositiveRootFrame(datum, tuple(word), tuple(betas))


def default_frame(datum: CartanDatum) -> PositiveRootFrame:
    return _default_frame(datum)


@lru_cache(maxsize=None)
def _default_frame(datum: CartanDatum) -> PositiveRootFrame:
    return positive_root_frame(datum)


def all_reduced_words(datum: CartanDatum, w: WeylElement) -> list[tuple[int, ...]]:
    """Every reduced word of w (0-based), in lexicographic order."""
    by_matrix = {x.matrix: x for x in weyl_group(datum)}
    gens = [_reflection_matrix(datum, i) for i in range(datum.rank)]

    @lru_cache(maxsize=None)
    def words(M: Matrix) -> tuple[tuple[int, ...], ...]:
        x = by_matrix[M]
        if x.length == 0:
            return ((),)
        out = []
        for i in range(datum.rank):
            P = _mat_mul(M, gens[i])  # x * gamma_i
            if by_matrix[P].length == x.length - 1:
                out.extend(u + (i,) for u in words(P))
        return tuple(sorted(out))

    return list(words(w.matrix))


# -- Kostant partition function -------------------------------------------------

def kostant_dim(frame: PositiveRootFrame, eta: Sequence[int]) -> int:
    """#{k in Z_+^N : sum_s k_s beta_s = eta}."""
    eta = tuple(eta)
    if not is_nonneg(eta):
        return 0
    return _kostant(frame.betas, eta, 0)


@lru_cache(maxsize=None)
def _kostant(betas: tuple, eta: tuple, s: int) -> int:
    if s == len(betas):
        return 1 if not any(eta) else 0
    b = betas[s]
    total = 0
    cur = eta
    while is_nonneg(cur):
        total += _kostant(betas, cur, s + 1)
        cur = tuple(x - y for x, y in zip(cur, b))
    return total


@lru_cache(maxsize=None)
def _pbw_indices(frame: PositiveRootFrame, eta: tuple) -> list:
    betas = frame.betas
    out: list[tuple[int, ...]] = []

    def rec(s: int, rest: tuple, acc: list[int]):
        if s == len(betas):
            if not any(rest):
                out.append(tuple(acc))
            return
        m = 0
        cur = rest
        while is_nonneg(cur):
            acc.append(m)
            rec(s + 1, cur, acc)
            acc.pop()
            m += 1
            cur = tuple(x - y for x, y in zip(cur, betas[s]))

    rec(0, eta, [])
    return sorted(out)


def degrees_up_to_height(n: int, h: int, min_height: int = 0) -> list[RootVec]:
    """All eta in Q_+ with min_height <= ht(eta) <= h, ordered by height then lexicographically."""
    out = []

    def rec(i: int, left: int, acc: list[int]):
        if i == n:
            out.append(tuple(acc))
            return
        for x in range(left + 1):
            acc.append(x)
            rec(i + 1, left - x, acc)
            acc.pop()

    rec(0, h, [])
    out = [e for e in out if height(e) >= min_height]
    out.sort(key=lambda e: (height(e), e))
    return out


def root_count(datum: CartanDatum) -> int:
    return longest_element(datum).length
