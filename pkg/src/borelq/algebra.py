"""Elements of the half quantum group and of the full quantum group in triangular form.

Two representations are used:

* ``AlgebraElement``: combinations of pre-normal monomials F_f K_lam E_e of the
  full algebra, produced by ``straighten`` using only the K-commutation and
  [E_i, F_j] relations.  Needed for the braid operators.
* ``ReducedElement``: combinations of E_b K_lam where b runs over a chosen
  basis of each graded piece of U^+ (the Serre quotient).  This is the
  normal form of U^{>=0} used everywhere else.

Words are tuples of 0-based generator indices.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .cartan import CartanDatum, PositiveRootFrame, default_frame, height, is_nonneg, kostant_dim
from .linalg import Echelon, add_scaled
from .scalars import (GENERIC, Scalar, ScalarContext, q_binomial, q_factorial, scalar_from_json,
                      scalar_to_json)

Word = tuple  # tuple[int, ...]
CACHE_VERSION = 1


class AlgebraError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """An internal cross-check failed (e.g. a dimension disagreed with the Kostant oracle)."""


# -- small helpers ----------------------------------------------------------------

def word_degree(word: Sequence[int], n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in word:
        out[i] += 1
    return tuple(out)


def vadd(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in a)


def words_of_degree(eta: Sequence[int]) -> list[Word]:
    """All words with letter multiplicities eta, in lexicographic (= shortlex) order."""
    counts = list(eta)
    total = sum(counts)
    out: list[Word] = []
    acc: list[int] = []

    def rec():
        if len(acc) == total:
            out.append(tuple(acc))
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                acc.append(i)
                rec()
                acc.pop()
                counts[i] += 1

    rec()
    return out


def _add_term(d: dict, key, c) -> None:
    v = d.get(key)
    v = c if v is None else v + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def _fmt_coeff(c, body: str) -> str:
    s = c.poly_str() if hasattr(c, "poly_str") else str(c)
    if body == "1":
        return s
    if s == "1":
        return body
    if s == "-1":
        return "-" + body
    if " " in s or "/" in s:
        s = f"({s})"
    return f"{s}*{body}"


def _fmt_sum(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def format_word(letter: str, word: Sequence[int]) -> str:
    if not word:
        return ""
    chunks = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        m = j - i
        chunks.append(f"{letter}{word[i] + 1}" + (f"^{m}" if m > 1 else ""))
        i = j
    return "*".join(chunks)


def format_k(lam: Sequence[int]) -> str:
    chunks = []
    for i, x in enumerate(lam):
        if x == 1:
            chunks.append(f"K{i + 1}")
        elif x:
            chunks.append(f"K{i + 1}^{x}")
    return "*".join(chunks)


# -- graded basis -------------------------------------------------------------------

@dataclass
class GradedBasis:
    """Basis of (U^+)_eta as shortlex-earliest independent words modulo the Serre ideal."""

    degree: tuple[int, ...]
    words: list[Word]
    basis_words: list[Word]
    ideal: Echelon  # rows of the Serre-ideal slice, pivot = latest word

    def __post_init__(self):
        self._basis_set = set(self.basis_words)

    @property
    def dim(self) -> int:
        return len(self.basis_words)

    def coords(self, word: Word) -> dict:
        """Coordinates of a word of this degree over basis_words."""
        if word in self._basis_set:
            return {word: 1}
        row = self.ideal.rows.get(word)
        if row is None:
            raise AlgebraError(f"word {word} is not of degree {self.degree}")
        return {w: -c for w, c in row.items() if w != word}


class BasisCache:
    """Keyed store of graded bases; optionally persisted as versioned JSON files."""

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory else None
        self._mem: dict = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key_hash(defining: dict) -> str:
        blob = json.dumps(defining, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:32]

    def get(self, defining: dict):
        k = self.key_hash(defining)
        if k in self._mem:
            return self._mem[k]
        if self.directory is None:
            return None
        path = self.directory / f"{k}.json"
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if data.get("version") != CACHE_VERSION or data.get("key") != defining:
            return None
        self.hits += 1
        return data["payload"]

    def put(self, defining: dict, payload, persist: bool = True) -> None:
        k = self.key_hash(defining)
        with self._lock:
            self._mem.setdefault(k, payload)
        if self.directory is None or not persist:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / f"{k}.json"
        if path.exists():
            return
        doc = {"version": CACHE_VERSION, "key": defining, "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True)
        os.replace(tmp, path)


def default_cache() -> BasisCache:
    return BasisCache(os.environ.get("BORELQ_CACHE_DIR") or None)


# -- the algebra ---------------------------------------------------------------------

class UqBorel:
    """U^{>=0} for a Cartan datum over a scalar context, with internal access to full U."""

    def __init__(self, datum: CartanDatum, ctx: ScalarContext = GENERIC,
                 frame: PositiveRootFrame | None = None, cache: BasisCache | None = None):
        self.datum = datum
        self.n = datum.rank
        self.ctx = ctx
        self.frame = frame if frame is not None else default_frame(datum)
        if self.frame.datum != datum:
            raise AlgebraError("frame belongs to a different Cartan datum")
        self.cache = cache if cache is not None else BasisCache()
        self.zero_weight = (0,) * self.n
        self._bases: dict = {}
        self._ef_memo: dict = {}
        self._T_gen: dict = {}
        self._root_vectors: list | None = None
        self.cancellation_levels: list[str] = []
        self._pbw_memo: dict = {}
        self._to_pbw_memo: dict = {}
        self._q = ctx.q_pow

    # -- scalars and pairing
    def q(self, k: int) -> Scalar:
        return self._q(k)

    def pairing(self, lam: Sequence[int], eta: Sequence[int]) -> int:
        return self.datum.pairing(lam, eta)

    def alpha(self, i: int) -> tuple[int, ...]:
        return self.datum.simple_root(i)

    def deg(self, word: Sequence[int]) -> tuple[int, ...]:
        return word_degree(word, self.n)

    # -- constructors
    def one(self) -> "ReducedElement":
        return ReducedElement(self, {((), self.zero_weight): self.ctx.one()})

    def zero(self) -> "ReducedElement":
        return ReducedElement(self, {})

    def E(self, i: int) -> "ReducedElement":
        self._check(i)
        return ReducedElement(self, {((i,), self.zero_weight): self.ctx.one()})

    def K(self, lam: Sequence[int] | int, power: int = 1) -> "ReducedElement":
        if isinstance(lam, int):
            self._check(lam)
            lam = tuple(power if j == lam else 0 for j in range(self.n))
        return ReducedElement(self, {((), tuple(lam)): self.ctx.one()})

    def scalar(self, c) -> "ReducedElement":
        c = self.ctx.coerce(c)
        return ReducedElement(self, {((), self.zero_weight): c} if c else {})

    def _check(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise AlgebraError(f"generator index {i + 1} out of range 1..{self.n}")

    # -- Serre relations and graded bases
    def serre_element(self, i: int, j: int) -> dict:
        """Left side of the q-Serre relation as {word: coeff} (0-based i != j)."""
        if i == j:
            raise AlgebraError("q-Serre relation needs i != j")
        self._check(i)
        self._check(j)
        m = 1 - self.datum.C[i][j]
        di = self.datum.D[i]
        out: dict = {}
        for s in range(m + 1):
            c = q_binomial(m, s, self.ctx, di)
            if s % 2:
                c = -c
            _add_term(out, (i,) * (m - s) + (j,) + (i,) * s, c)
        return out

    def serre_degree(self, i: int, j: int) -> tuple[int, ...]:
        m = 1 - self.datum.C[i][j]
        return vadd(tuple(m * x for x in self.alpha(i)), self.alpha(j))

    def _cache_key(self, eta) -> dict:
        return {"series": self.datum.series, "rank": self.n, "w0": list(self.frame.w0_word),
                "eta": list(eta), "r": self.ctx.r, "kind": "graded_basis"}

    def graded_basis(self, eta: Sequence[int]) -> GradedBasis:
        eta = tuple(eta)
        gb = self._bases.get(eta)
        if gb is not None:
            return gb
        if not is_nonneg(eta):
            raise AlgebraError(f"degree {eta} is not in Q+")
        key = self._cache_key(eta)
        payload = self.cache.get(key)
        if payload is not None:
            gb = self._basis_from_payload(eta, payload)
        else:
            self.cache.misses += 1
            gb = self._compute_basis(eta)
            self.cache.put(key, self._basis_payload(gb))
        expected = kostant_dim(self.frame, eta)
        if gb.dim != expected:
            raise ConsistencyError(
                f"dim (U+)_{eta} = {gb.dim} from the Serre quotient but kostant_dim = {expected}")
        self._bases[eta] = gb
        return gb

    def _compute_basis(self, eta: tuple) -> GradedBasis:
        words = words_of_degree(eta)
        # reverse shortlex: the pivot of each row is its latest word
        order = {w: len(words) - 1 - k for k, w in enumerate(words)}
        ideal = Echelon(order)
        if sum(eta) > 0:
            for i in range(self.n):
                lower = vsub(eta, self.alpha(i))
                if not is_nonneg(lower) or sum(lower) == 0:
                    continue
                rows = list(self.graded_basis(lower).ideal.rows.values())
                for row in rows:
                    ideal.add({(i,) + w: c for w, c in row.items()})
                    ideal.add({w + (i,): c for w, c in row.items()})
            for i in range(self.n):
                for j in range(self.n):
                    if i != j and self.serre_degree(i, j) == eta:
                        ideal.add(self.serre_element(i, j))
        basis = [w for w in words if w not in ideal.rows]
        return GradedBasis(eta, words, basis, ideal)

    def _basis_payload(self, gb: GradedBasis) -> dict:
        return {"basis_words": [list(w) for w in gb.basis_words],
                "rows": [[list(p), [[list(w), scalar_to_json(c)] for w, c in sorted(row.items())]]
                         for p, row in sorted(gb.ideal.rows.items())]}

    def _basis_from_payload(self, eta: tuple, payload: dict) -> GradedBasis:
        words = words_of_degree(eta)
        order = {w: len(words) - 1 - k for k, w in enumerate(words)}
        ideal = Echelon(order)
        for p, row in payload["rows"]:
            ideal.rows[tuple(p)] = {tuple(w): scalar_from_json(c) for w, c in row}
        basis = [tuple(w) for w in payload["basis_words"]]
        return GradedBasis(eta, words, basis, ideal)

    def word_coords(self, word: Word) -> dict:
        """Coordinates of E_word (or F_word) over the basis words of its degree."""
        if len(word) <= 1:
            return {tuple(word): 1}
        return self.graded_basis(self.deg(word)).coords(tuple(word))

    def reduce_words(self, terms: Mapping) -> dict:
        """Reduce {word: c} to basis-word coordinates."""
        out: dict = {}
        for w, c in terms.items():
            for b, x in self.word_coords(w).items():
                _add_term(out, b, c * x)
        return out

    # -- U^{>=0} arithmetic in reduced form
    def mono_mul(self, m1: tuple, m2: tuple) -> dict:
        """(E_w K_lam)(E_v K_mu) = q^<lam, deg v> E_{wv} K_{lam+mu}, reduced."""
        (w, lam), (v, mu) = m1, m2
        e = self.pairing(lam, self.deg(v)) if v else 0
        c = self._q(e)
        nu = vadd(lam, mu)
        if not w or not v:
            return {(w + v, nu): c}
        return {(b, nu): c * x for b, x in self.word_coords(w + v).items()}

    def mul_terms(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                c = c1 * c2
                for m, x in self.mono_mul(m1, m2).items():
                    _add_term(out, m, c * x)
        return out

    def reduce(self, a: "AlgebraElement") -> "ReducedElement":
        """Normal form of an element of U^{>=0} given in pre-normal form."""
        out: dict = {}
        for (f, lam, e), c in a.terms.items():
            if f:
                raise AlgebraError("not in U>=0: element has F content")
            # K_lam E_e = q^<lam, deg e> E_e K_lam
            c = c * self._q(self.pairing(lam, self.deg(e))) if e else c
            for b, x in self.word_coords(e).items():
                _add_term(out, (b, lam), c * x)
        return ReducedElement(self, out)

    def lift(self, x: "ReducedElement") -> "AlgebraElement":
        """Pre-normal expansion of a reduced element (inverse of reduce on its image)."""
        out: dict = {}
        for (w, lam), c in x.terms.items():
            c = c * self._q(-self.pairing(lam, self.deg(w))) if w else c
            _add_term(out, ((), lam, w), c)
        return AlgebraElement(self, out)

    # -- full U: straightening
    def _c(self, a: int) -> Scalar:
        da = self.datum.D[a]
        x = self._q(da) - self._q(-da)
        if not x:
            raise AlgebraError(f"q_{a + 1} - q_{a + 1}^-1 vanishes in {self.ctx!r}")
        return x.inv()

    def _ef(self, e: Word, f: Word) -> dict:
        """E_e F_f as {(f', lam, e'): c} in pre-normal form."""
        if not e or not f:
            return {(f, self.zero_weight, e): self.ctx.one()}
        key = (e, f)
        hit = self._ef_memo.get(key)
        if hit is not None:
            return hit
        a = e[-1]
        head = e[:-1]
        out: dict = {}
        for (g, mu, h), c in self._ef(head, f).items():
            _add_term(out, (g, mu, h + (a,)), c)
        alpha = self.alpha(a)
        ca = self._c(a)
        for k, b in enumerate(f):
            if b != a:
                continue
            p = self.pairing(alpha, self.deg(f[k + 1:]))
            fr = f[:k] + f[k + 1:]
            sub = self._ef(head, fr)
            for lam, coef in ((alpha, ca * self._q(-p)), (vneg(alpha), -ca * self._q(p))):
                for (g, mu, h), c in sub.items():
                    x = c * coef
                    if h:
                        x = x * self._q(-self.pairing(lam, self.deg(h)))
                    _add_term(out, (g, vadd(mu, lam), h), x)
        self._ef_memo[key] = out
        return out

    def pre_mul_mono(self, m1: tuple, m2: tuple) -> dict:
        (f1, l1, e1), (f2, l2, e2) = m1, m2
        out: dict = {}
        for (g, mu, h), c in self._ef(e1, f2).items():
            ex = 0
            if g:
                ex -= self.pairing(l1, self.deg(g))
            if h:
                ex -= self.pairing(l2, self.deg(h))
            _add_term(out, (f1 + g, vadd(vadd(l1, mu), l2), h + e2), c * self._q(ex) if ex else c)
        return out

    def pre_mul(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                c = c1 * c2
                for m, x in self.pre_mul_mono(m1, m2).items():
                    _add_term(out, m, c * x)
        return out

    def letter(self, kind: str, i: int, power: int = 1) -> "AlgebraElement":
        """Generator as a pre-normal element: kind in {'E', 'F', 'K'}."""
        self._check(i)
        one = self.ctx.one()
        z = self.zero_weight
        if kind == "E":
            return AlgebraElement(self, {((), z, (i,)): one})
        if kind == "F":
            return AlgebraElement(self, {((i,), z, ()): one})
        if kind == "K":
            return AlgebraElement(self, {((), tuple(power if j == i else 0 for j in range(self.n)), ()): one})
        raise AlgebraError(f"unknown generator kind {kind!r}")

    def straighten(self, letters: Iterable[tuple]) -> "AlgebraElement":
        """Pre-normal form of a free word given as (kind, index[, power]) letters."""
        acc = {((), self.zero_weight, ()): self.ctx.one()}
        for lt in letters:
            acc = self.pre_mul(acc, self.letter(*lt).terms)
        return AlgebraElement(self, acc)

    def reduce_triangular(self, a: "AlgebraElement") -> dict:
        """Reduce both the F-word and the E-word parts modulo Serre relations.

        Returns {(fb, lam, eb): c} over basis words; used to detect
        cancellation of F/K content in braid images.
        """
        out: dict = {}
        for (f, lam, e), c in a.terms.items():
            fc = self.word_coords(f)
            ec = self.word_coords(e)
            for fb, x in fc.items():
                for eb, y in ec.items():
                    _add_term(out, (fb, lam, eb), c * x * y)
        return out

    # -- braid operators
    def _divided_power(self, i: int, m: int) -> "AlgebraElement":
        c = q_factorial(m, self.ctx, self.datum.D[i]).inv()
        return AlgebraElement(self, {((), self.zero_weight, (i,) * m): c})

    def T_generator(self, i: int, j: int) -> "AlgebraElement":
        """T_i(E_j) in pre-normal form."""
        key = (i, j)
        hit = self._T_gen.get(key)
        if hit is not None:
            return hit
        if i == j:
            out = AlgebraElement(self, {((i,), self.alpha(i), ()): -self.ctx.one()})
        else:
            r = -self.datum.C[i][j]
            di = self.datum.D[i]
            acc: dict = {}
            Ej = {((), self.zero_weight, (j,)): self.ctx.one()}
            for l in range(r + 1):
                sign = -1 if (l + r) % 2 else 1
                term = self.pre_mul(self.pre_mul(self._divided_power(i, r - l).terms, Ej),
                                    self._divided_power(i, l).terms)
                coef = self._q(-di * l) * sign
                for m, c in term.items():
                    _add_term(acc, m, c * coef)
            out = AlgebraElement(self, acc)
        self._T_gen[key] = out
        return out

    def braid_T(self, i: int, a: Mapping | "ReducedElement") -> "AlgebraElement":
        """Image of a U^+ element {word: c} under T_i, in pre-normal form."""
        self._check(i)
        if isinstance(a, ReducedElement):
            terms = {}
            for (w, lam), c in a.terms.items():
                if any(lam):
                    raise AlgebraError("braid_T expects an element of U^+")
                terms[w] = c
            a = terms
        out: dict = {}
        images = {}
        for w, c in a.items():
            acc = {((), self.zero_weight, ()): self.ctx.one()}
            for j in w:
                img = images.get(j)
                if img is None:
                    img = images[j] = self.T_generator(i, j).terms
                acc = self.pre_mul(acc, img)
            for m, x in acc.items():
                _add_term(out, m, c * x)
        return AlgebraElement(self, out)

    def _to_plus(self, a: "AlgebraElement", what: str) -> tuple[dict, str]:
        """Strip an element known to lie in U^+; report the level at which F/K cancelled."""
        level = "prenormal"
        if any(f or any(lam) for (f, lam, e) in a.terms):
            level = "serre"
        red = self.reduce_triangular(a)
        bad = [m for m in red if m[0] or any(m[1])]
        if bad:
            raise ConsistencyError(f"{what}: residual F/K content after Serre reduction: {bad[:3]}")
        return {e: c for (f, lam, e), c in red.items()}, level

    def root_vectors(self) -> list["ReducedElement"]:
        """E_{beta_s} = T_{i_1}...T_{i_{s-1}} E_{i_s}, applied innermost first."""
        if self._root_vectors is not None:
            return self._root_vectors
        if not self.ctx.generic:
            raise AlgebraError("root vectors are computed in the generic regime and then specialised")
        word = self.frame.w0_word
        vectors = []
        levels = []
        for s, i_s in enumerate(word):
            x = {(i_s,): self.ctx.one()}
            lev = "prenormal"
            for t in range(s - 1, -1, -1):
                img = self.braid_T(word[t], x)
                x, level = self._to_plus(img, f"T-image for beta_{s + 1}")
                if level == "serre":
                    lev = "serre"
            beta = self.frame.betas[s]
            for w in x:
                if self.deg(w) != beta:
                    raise ConsistencyError(f"E_beta_{s + 1} is not homogeneous of degree {beta}")
            if height(beta) == 1:
                t = beta.index(1)
                if x != {(t,): self.ctx.one()}:
                    raise ConsistencyError(f"E_beta_{s + 1} should equal E_{t + 1}, got {x}")
            vectors.append(ReducedElement(self, {(w, self.zero_weight): c for w, c in x.items()}))
            levels.append(lev)
        self._root_vectors = vectors
        self.cancellation_levels = levels
        return vectors

    # -- PBW
    def pbw_monomial(self, k: Sequence[int], lam: Sequence[int] | None = None) -> "ReducedElement":
        k = tuple(k)
        if len(k) != self.frame.N:
            raise AlgebraError(f"PBW index needs {self.frame.N} entries")
        x = self._pbw_plus(k)
        if lam is not None and any(lam):
            x = x * self.K(tuple(lam))
        return x

    def _pbw_plus(self, k: tuple) -> "ReducedElement":
        hit = self._pbw_memo.get(k)
        if hit is not None:
            return hit
        nz = [s for s, ks in enumerate(k) if ks]
        if not nz:
            out = self.one()
        else:
            s = nz[-1]
            prev = list(k)
            prev[s] -= 1
            out = self._pbw_plus(tuple(prev)) * self.root_vectors()[s]
        self._pbw_memo[k] = out
        return out

    def pbw_change_of_basis(self, eta: Sequence[int]) -> dict:
        """{basis word: {k: c}} expressing each basis word over PBW monomials of degree eta."""
        eta = tuple(eta)
        hit = self._to_pbw_memo.get(eta)
        if hit is not None:
            return hit
        gb = self.graded_basis(eta)
        ks = self.frame.pbw_indices(eta)
        order = {w: i for i, w in enumerate(gb.basis_words)}
        tag_base = len(order)
        for t, k in enumerate(ks):
            order[("pbw", k)] = tag_base + t
        ech = Echelon(order)
        for k in ks:
            v = {w: c for (w, lam), c in self._pbw_plus(k).terms.items()}
            v[("pbw", k)] = self.ctx.one()
            ech.add(v)
        out = {}
        for w in gb.basis_words:
            row = ech.rows.get(w)
            if row is None:
                raise ConsistencyError(f"PBW monomials of degree {eta} do not span")
            out[w] = {tag[1]: c for tag, c in row.items() if tag != w}
        if len(ech) != len(ks) or any(isinstance(p, tuple) and p and p[0] == "pbw" for p in ech.rows):
            raise ConsistencyError(f"PBW monomials of degree {eta} are dependent")
        self._to_pbw_memo[eta] = out
        return out

    def to_pbw(self, x: "ReducedElement") -> dict:
        """{(k, lam): c} coordinates over the PBW basis E^k K_lam."""
        out: dict = {}
        for (w, lam), c in x.terms.items():
            if not w:
                _add_term(out, ((0,) * self.frame.N, lam), c)
                continue
            for k, y in self.pbw_change_of_basis(self.deg(w))[w].items():
                _add_term(out, (k, lam), c * y)
        return out

    def from_pbw(self, coords: Mapping) -> "ReducedElement":
        out = self.zero()
        for (k, lam), c in coords.items():
            out = out + self.pbw_monomial(k, lam) * c
        return out

    # -- smash product U^0 # U^+
    def smash_multiply(self, a: Mapping, b: Mapping) -> dict:
        """(K_lam (x) E_w)(K_mu (x) E_v) = K_{lam+mu} (x) (E_w . K_mu) E_v, keys (lam, word)."""
        out: dict = {}
        for (lam, w), c1 in a.items():
            for (mu, v), c2 in b.items():
                # right action E_w . K_mu = q^{-<mu, deg w>} E_w
                c = c1 * c2 * (self._q(-self.pairing(mu, self.deg(w))) if w else 1)
                nu = vadd(lam, mu)
                coords = {w + v: 1} if (not w or not v) else self.word_coords(w + v)
                for bw, x in coords.items():
                    _add_term(out, (nu, bw), c * x)
        return out

    def smash_to_algebra(self, a: Mapping) -> "ReducedElement":
        """Comparison map K_lam (x) x |-> K_lam x."""
        out: dict = {}
        for (lam, w), c in a.items():
            e = self.pairing(lam, self.deg(w)) if w else 0
            _add_term(out, (w, lam), c * self._q(e))
        return ReducedElement(self, out)


# -- element classes --------------------------------------------------------------

class _ElementBase:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: UqBorel, terms: dict):
        self.alg = alg
        self.terms = terms

    def _new(self, terms):
        return type(self)(self.alg, terms)

    def __add__(self, other):
        if not isinstance(other, type(self)):
            other = self._from_scalar(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, 1)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return self._new({})
        return self._new({m: x * c for m, x in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int,)) and other == 0:
            return not self.terms
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)


class ReducedElement(_ElementBase):
    """Element of U^{>=0} in normal form: {(basis word, lam): c} meaning sum c E_word K_lam."""

    __slots__ = ()

    def _from_scalar(self, c):
        c = self.alg.ctx.coerce(c)
        return ReducedElement(self.alg, {((), self.alg.zero_weight): c} if c else {})

    def __mul__(self, other):
        if isinstance(other, ReducedElement):
            return ReducedElement(self.alg, self.alg.mul_terms(self.terms, other.terms))
        return self.scale(self.alg.ctx.coerce(other))

    def __rmul__(self, other):
        return self.scale(self.alg.ctx.coerce(other))

    def __pow__(self, m: int):
        if m < 0:
            raise AlgebraError("negative powers are only defined for group-likes")
        out = self.alg.one()
        for _ in range(m):
            out = out * self
        return out

    def degrees(self) -> set:
        return {self.alg.deg(w) for (w, lam) in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def height(self) -> int:
        return max((len(w) for (w, lam) in self.terms), default=0)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (len(t[0][0]), t[0][0], t[0][1]))

    def __str__(self):
        parts = []
        for (w, lam), c in self.sorted_terms():
            body = "*".join(p for p in (format_word("E", w), format_k(lam)) if p) or "1"
            parts.append(_fmt_coeff(c, body))
        return _fmt_sum(parts)

    def __repr__(self):
        return f"ReducedElement({self})"


class AlgebraElement(_ElementBase):
    """Element of U in pre-normal form: {(fword, lam, eword): c} meaning sum c F_f K_lam E_e."""

    __slots__ = ()

    def _from_scalar(self, c):
        c = self.alg.ctx.coerce(c)
        z = self.alg.zero_weight
        return AlgebraElement(self.alg, {((), z, ()): c} if c else {})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.alg, self.alg.pre_mul(self.terms, other.terms))
        return self.scale(self.alg.ctx.coerce(other))

    def __rmul__(self, other):
        return self.scale(self.alg.ctx.coerce(other))

    def in_borel(self) -> bool:
        return all(not f for (f, lam, e) in self.terms)

    def __str__(self):
        parts = []
        for (f, lam, e), c in sorted(self.terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][2]), t[0])):
            body = "*".join(p for p in (format_word("F", f), format_k(lam), format_word("E", e)) if p) or "1"
            parts.append(_fmt_coeff(c, body))
        return _fmt_sum(parts)

    def __repr__(self):
        return f"AlgebraElement({self})"


# -- whole-algebra checks ------------------------------------------------------------

def dimension_check(alg: UqBorel, max_height: int, min_height: int = 1) -> list[dict]:
    """dim (U^+)_eta from the Serre quotient against the Kostant count, per degree."""
    from .cartan import degrees_up_to_height
    rows = []
    for eta in degrees_up_to_height(alg.n, max_height, min_height):
        try:
            dim = alg.graded_basis(eta).dim
        except ConsistencyError:
            dim = None
        k = kostant_dim(alg.frame, eta)
        rows.append({"eta": list(eta), "dim": dim, "kostant": k, "pass": dim == k})
    return rows


def serre_check(alg: UqBorel) -> list[dict]:
    """Each q-Serre element reduces to zero in the normal form."""
    out = []
    for i in range(alg.n):
        for j in range(alg.n):
            if i == j:
                continue
            terms = alg.serre_element(i, j)
            red = alg.reduce_words(terms)
            out.append({"i": i + 1, "j": j + 1, "degree": list(alg.serre_degree(i, j)),
                        "pass": not red})
    return out


def pbw_check(alg: UqBorel, max_height: int) -> dict:
    """Root vectors lie in U^+, simple ones are generators, PBW monomials form a basis per degree."""
    from .cartan import degrees_up_to_height
    rep: dict = {"root_vectors": [], "degrees": []}
    try:
        vecs = alg.root_vectors()
    except ConsistencyError as exc:
        rep["root_vectors_ok"] = False
        rep["error"] = str(exc)
        rep["pass"] = False
        return rep
    for s, (beta, v) in enumerate(zip(alg.frame.betas, vecs)):
        rep["root_vectors"].append({"index": s + 1, "beta": list(beta), "element": str(v),
                                    "cancellation": alg.cancellation_levels[s]})
    rep["root_vectors_ok"] = all(not any(lam) for v in vecs for (_, lam) in v.terms)
    ok = rep["root_vectors_ok"]
    for eta in degrees_up_to_height(alg.n, max_height, 1):
        count = len(alg.frame.pbw_indices(eta))
        k = kostant_dim(alg.frame, eta)
        try:
            alg.pbw_change_of_basis(eta)
            independent = True
        except ConsistencyError:
            independent = False
        row_ok = independent and count == k
        ok = ok and row_ok
        rep["degrees"].append({"eta": list(eta), "count": count, "kostant": k,
                               "independent": independent, "pass": row_ok})
    rep["pass"] = ok
    return rep


def smash_check(alg: UqBorel, max_height: int, box: int = 1) -> dict:
    """The map K_lam (x) x -> K_lam x is multiplicative on basis pairs of total height <= max_height."""
    from itertools import product
    from .cartan import degrees_up_to_height
    lams = list(product(range(-box, box + 1), repeat=alg.n))
    words = [()]
    for eta in degrees_up_to_height(alg.n, max_height, 1):
        words.extend(alg.graded_basis(eta).basis_words)
    elems = [((lam, w), {(lam, w): alg.ctx.one()}) for w in words for lam in lams]
    images = {key: alg.smash_to_algebra(x) for key, x in elems}
    failures = []
    checked = 0
    for ka, a in elems:
        for kb, b in elems:
            if len(ka[1]) + len(kb[1]) > max_height:
                continue
            checked += 1
            if alg.smash_to_algebra(alg.smash_multiply(a, b)) != images[ka] * images[kb]:
                failures.append(["*".join(filter(None, [format_k(k[0]), format_word("E", k[1])])) or "1"
                                 for k in (ka, kb)])
    return {"checked": checked, "failures": failures[:5], "pass": not failures}
