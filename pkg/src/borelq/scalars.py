"""Exact coefficient fields: Q(q) for generic q, Q(zeta_r) for q a root of unity.

Polynomial arithmetic is delegated to python-flint. Values are immutable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import flint

_ZP = flint.fmpz_poly
_QP = flint.fmpq_poly


def _fmpq(x) -> "flint.fmpq":
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)

Number = Union[int, Fraction]


class ScalarError(ArithmeticError):
    pass


def _coeffs(p: _ZP) -> tuple[int, ...]:
    return tuple(int(c) for c in p.coeffs())


def _lowest(p: _ZP) -> int:
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    return 0


_ZERO_P = _ZP(0)
_ONE_P = _ZP(1)


def _fmt_poly_terms(terms: Iterable[tuple[int, object]], var: str) -> str:
    """Render (exponent, coefficient) pairs, lowest exponent first."""
    out: list[str] = []
    for e, c in terms:
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


class RationalFunction:
    """Element q^shift * num(q)/den(q) of Q(q).

    Canonical form: num, den in Z[q] coprime (content included), neither
    divisible by q, den with positive leading coefficient.  Zero is
    (0, 1, shift 0).  Instances with den == 1 are created as IntLaurent.
    """

    __slots__ = ("_num", "_den", "_shift", "_hash")

    def __init__(self, num: _ZP, den: _ZP = _ONE_P, shift: int = 0):
        raise TypeError("use RationalFunction.make or the q/constant helpers")

    # -- construction -------------------------------------------------
    @staticmethod
    def _raw(num: _ZP, den: _ZP, shift: int) -> "RationalFunction":
        cls = IntLaurent if den == _ONE_P else RationalFunction
        obj = object.__new__(cls)
        obj._num = num
        obj._den = den
        obj._shift = shift
        obj._hash = None
        return obj

    @staticmethod
    def make(num: _ZP, den: _ZP = _ONE_P, shift: int = 0) -> "RationalFunction":
        if den == _ZERO_P:
            raise ScalarError("division by zero")
        if num == _ZERO_P:
            return _ZERO
        v = _lowest(num)
        if v:
            num = num.right_shift(v)
            shift += v
        v = _lowest(den)
        if v:
            den = den.right_shift(v)
            shift -= v
        if den != _ONE_P:
            g = num.gcd(den)
            if g != _ONE_P:
                num = num // g
                den = den // g
            if den.leading_coefficient() < 0:
                num = -num
                den = -den
        return RationalFunction._raw(num, den, shift)

    @staticmethod
    def from_int(n: int) -> "RationalFunction":
        if n == 0:
            return _ZERO
        return RationalFunction._raw(_ZP(n), _ONE_P, 0)

    @staticmethod
    def from_fraction(x: Number) -> "RationalFunction":
        x = Fraction(x)
        if x.denominator == 1:
            return RationalFunction.from_int(x.numerator)
        return RationalFunction.make(_ZP(x.numerator), _ZP(x.denominator), 0)

    @staticmethod
    def q_power(k: int) -> "IntLaurent":
        return RationalFunction._raw(_ONE_P, _ONE_P, k)  # type: ignore[return-value]

    @staticmethod
    def from_laurent(coeffs: Iterable[int], shift: int = 0) -> "RationalFunction":
        return RationalFunction.make(_ZP(list(coeffs)), _ONE_P, shift)

    # -- accessors ----------------------------------------------------
    @property
    def num(self) -> "IntLaurent":
        return RationalFunction._raw(self._num, _ONE_P, self._shift)  # type: ignore[return-value]

    @property
    def den(self) -> "IntLaurent":
        return RationalFunction._raw(self._den, _ONE_P, 0)  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return self._num == _ZERO_P

    def is_laurent(self) -> bool:
        return self._den == _ONE_P

    def key(self) -> tuple:
        return (self._shift, _coeffs(self._num), _coeffs(self._den))

    def to_json(self) -> dict:
        return {"shift": self._shift, "num": list(_coeffs(self._num)), "den": list(_coeffs(self._den))}

    @staticmethod
    def from_json(d: dict) -> "RationalFunction":
        return RationalFunction.make(_ZP(d["num"]), _ZP(d["den"]), d["shift"])

    def evaluate_at_root_of_unity(self, r: int) -> "Cyclotomic":
        num = Cyclotomic.from_int_poly(r, _coeffs(self._num), self._shift)
        if self._den == _ONE_P:
            return num
        den = Cyclotomic.from_int_poly(r, _coeffs(self._den), 0)
        if den.is_zero():
            raise ScalarError(f"denominator {self.den} vanishes at a primitive {r}-th root of unity")
        return num / den

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RationalFunction | None":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, int):
            return RationalFunction.from_int(x)
        if isinstance(x, Fraction):
            return RationalFunction.from_fraction(x)
        return None

    def __add__(self, other):
        o = RationalFunction._coerce(other)
        if o is None:
            return NotImplemented
        if o._num == _ZERO_P:
            return self
        if self._num == _ZERO_P:
            return o
        s = min(self._shift, o._shift)
        a = self._num.left_shift(self._shift - s) if self._shift > s else self._num
        b = o._num.left_shift(o._shift - s) if o._shift > s else o._num
        if self._den == o._den:
            return RationalFunction.make(a + b, self._den, s)
        return RationalFunction.make(a * o._den + b * self._den, self._den * o._den, s)

    __radd__ = __add__

    def __neg__(self):
        if self._num == _ZERO_P:
            return self
        return RationalFunction._raw(-self._num, self._den, self._shift)

    def __sub__(self, other):
        o = RationalFunction._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RationalFunction._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = RationalFunction._coerce(other)
        if o is None:
            return NotImplemented
        if self._num == _ZERO_P or o._num == _ZERO_P:
            return _ZERO
        if self._den == _ONE_P and o._den == _ONE_P:
            return RationalFunction._raw(self._num * o._num, _ONE_P, self._shift + o._shift)
        n1, d1, n2, d2 = self._num, self._den, o._num, o._den
        g = n1.gcd(d2)
        if g != _ONE_P:
            n1, d2 = n1 // g, d2 // g
        g = n2.gcd(d1)
        if g != _ONE_P:
            n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RationalFunction._raw(num, den, self._shift + o._shift)

    __rmul__ = __mul__

    def inv(self) -> "RationalFunction":
        if self._num == _ZERO_P:
            raise ScalarError("division by zero")
        num, den = self._den, self._num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RationalFunction._raw(num, den, -self._shift)

    def __truediv__(self, other):
        o = RationalFunction._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = RationalFunction._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if self._den == _ONE_P:
            return RationalFunction._raw(self._num ** k, _ONE_P, self._shift * k)
        return RationalFunction._raw(self._num ** k, self._den ** k, self._shift * k)

    def __eq__(self, other):
        o = RationalFunction._coerce(other)
        if o is None:
            return NotImplemented
        return self._shift == o._shift and self._num == o._num and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __bool__(self):
        return self._num != _ZERO_P

    def __str__(self):
        num = _fmt_poly_terms(((i + self._shift, int(c)) for i, c in enumerate(self._num.coeffs())), "q")
        if self._den == _ONE_P:
            return num
        den = _fmt_poly_terms(((i, int(c)) for i, c in enumerate(self._den.coeffs())), "q")
        return f"({num})/({den})"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class IntLaurent(RationalFunction):
    """Integer Laurent polynomial sum_i coeffs[i] q^(shift+i)."""

    __slots__ = ()

    @property
    def shift(self) -> int:
        return self._shift if self._num != _ZERO_P else 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return _coeffs(self._num) if self._num != _ZERO_P else ()

    def normalized(self) -> "IntLaurent":
        return RationalFunction.from_laurent(self.coeffs, self.shift)  # type: ignore[return-value]

    def to_root_of_unity(self, r: int) -> "Cyclotomic":
        return to_root_of_unity(self, r)


_ZERO = RationalFunction._raw(_ZERO_P, _ONE_P, 0)


@lru_cache(maxsize=None)
def _cyclotomic_modulus(r: int) -> _QP:
    return _QP(_ZP.cyclotomic(r))


@lru_cache(maxsize=None)
def euler_phi(r: int) -> int:
    return _ZP.cyclotomic(r).degree()


class Cyclotomic:
    """Element of Q(z), z a primitive r-th root of unity, in the power basis."""

    __slots__ = ("order", "_p", "_hash")

    def __init__(self, order: int, poly: _QP, _reduced: bool = False):
        if order < 3:
            raise ScalarError("root-of-unity order must be at least 3 (q = +-1 excluded)")
        self.order = order
        self._p = poly if _reduced else poly % _cyclotomic_modulus(order)
        self._hash = None

    @staticmethod
    def from_int_poly(r: int, coeffs: Iterable[int], shift: int = 0) -> "Cyclotomic":
        coeffs = list(coeffs)
        if not coeffs:
            return Cyclotomic(r, _QP(0), True)
        s = shift % r
        # q^shift * p(q): exponents taken mod r before reduction.
        folded = [0] * r
        for i, c in enumerate(coeffs):
            folded[(i + s) % r] += c
        return Cyclotomic(r, _QP(folded))

    @staticmethod
    def from_number(r: int, x: Number) -> "Cyclotomic":
        return Cyclotomic(r, _QP([_fmpq(x)]) if x else _QP(0), True)

    @staticmethod
    def z_power(r: int, k: int) -> "Cyclotomic":
        return Cyclotomic.from_int_poly(r, [1], k)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        cs = [Fraction(int(c.p), int(c.q)) for c in self._p.coeffs()]
        cs += [Fraction(0)] * (euler_phi(self.order) - len(cs))
        return tuple(cs)

    def is_zero(self) -> bool:
        return self._p == 0

    def to_json(self) -> dict:
        return {"r": self.order, "coords": [str(c) for c in self.coords]}

    @staticmethod
    def from_json(d: dict) -> "Cyclotomic":
        return Cyclotomic(d["r"], _QP([_fmpq(c) for c in d["coords"]]))

    def _coerce(self, x) -> "Cyclotomic | None":
        if isinstance(x, Cyclotomic):
            if x.order != self.order:
                raise ScalarError("mixing cyclotomic fields of different orders")
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.from_number(self.order, x)
        if isinstance(x, RationalFunction):
            return x.evaluate_at_root_of_unity(self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, self._p + o._p, True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, -self._p, True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, self._p - o._p, True)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, o._p - self._p, True)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, self._p * o._p)

    __rmul__ = __mul__

    def inv(self) -> "Cyclotomic":
        if self._p == 0:
            raise ScalarError("division by zero")
        g, s, _ = self._p.xgcd(_cyclotomic_modulus(self.order))
        # g is a nonzero constant since the modulus is irreducible
        return Cyclotomic(self.order, s / g)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = Cyclotomic.from_number(self.order, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ScalarError:
            return False
        if o is None:
            return NotImplemented
        return self._p == o._p

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, tuple(self.coords)))
        return self._hash

    def __bool__(self):
        return self._p != 0

    def key(self) -> tuple:
        return (self.order, tuple(str(c) for c in self.coords))

    def poly_str(self) -> str:
        """Polynomial in z without the order annotation."""
        return _fmt_poly_terms(list(enumerate(self.coords)), "z")

    def __str__(self):
        return f"{self.poly_str()} (r={self.order})"

    def __repr__(self):
        return f"Cyclotomic({self})"


Scalar = Union[RationalFunction, Cyclotomic]


def to_root_of_unity(x: RationalFunction, r: int) -> Cyclotomic:
    """Evaluate x at q = z, a primitive r-th root of unity."""
    if r < 3:
        raise ScalarError("root-of-unity order must be at least 3")
    return x.evaluate_at_root_of_unity(r)


class ScalarContext:
    """Coefficient regime of a computation: generic q, or q a primitive r-th root of unity."""

    __slots__ = ("r", "_qpows")

    def __init__(self, r: int | None = None):
        if r is not None and r < 3:
            raise ScalarError("root-of-unity order must be at least 3 (q = +-1 excluded)")
        self.r = r
        self._qpows: dict[int, Scalar] = {}

    @property
    def generic(self) -> bool:
        return self.r is None

    def __eq__(self, other):
        return isinstance(other, ScalarContext) and other.r == self.r

    def __hash__(self):
        return hash(("ctx", self.r))

    def __repr__(self):
        return "Generic" if self.r is None else f"RootOfUnity({self.r})"

    def zero(self) -> Scalar:
        return _ZERO if self.r is None else Cyclotomic.from_number(self.r, 0)

    def one(self) -> Scalar:
        return self.q_pow(0)

    def from_int(self, n: int) -> Scalar:
        return RationalFunction.from_int(n) if self.r is None else Cyclotomic.from_number(self.r, n)

    def from_fraction(self, x: Number) -> Scalar:
        return RationalFunction.from_fraction(x) if self.r is None else Cyclotomic.from_number(self.r, x)

    def q_pow(self, k: int) -> Scalar:
        if self.r is not None:
            k %= self.r
        v = self._qpows.get(k)
        if v is None:
            v = RationalFunction.q_power(k) if self.r is None else Cyclotomic.z_power(self.r, k)
            self._qpows[k] = v
        return v

    def coerce(self, x) -> Scalar:
        if isinstance(x, (int, Fraction)):
            return self.from_fraction(x)
        if self.r is None:
            if isinstance(x, RationalFunction):
                return x
            raise ScalarError("cannot lift a cyclotomic number to the generic field")
        if isinstance(x, RationalFunction):
            return x.evaluate_at_root_of_unity(self.r)
        if isinstance(x, Cyclotomic) and x.order == self.r:
            return x
        raise ScalarError(f"cannot coerce {x!r} into {self!r}")


GENERIC = ScalarContext()


def is_zero(x) -> bool:
    return not x


# -- q-combinatorics ----------------------------------------------------------

@lru_cache(maxsize=None)
def _q_int_generic(n: int) -> IntLaurent:
    if n == 0:
        return _ZERO  # type: ignore[return-value]
    if n < 0:
        return -_q_int_generic(-n)  # type: ignore[return-value]
    # q^(n-1) + q^(n-3) + ... + q^(1-n)
    coeffs = [0] * (2 * n - 1)
    for i in range(0, 2 * n - 1, 2):
        coeffs[i] = 1
    return RationalFunction.from_laurent(coeffs, 1 - n)  # type: ignore[return-value]


def q_int(n: int, ctx: ScalarContext = GENERIC, base_power: int = 1) -> Scalar:
    """[n]_v with v = q^base_power (base_power = d_i gives [n]_{q_i})."""
    x = _q_int_generic(n)
    if base_power != 1:
        x = _substitute_power(x, base_power)
    return x if ctx.generic else ctx.coerce(x)


def _substitute_power(x: IntLaurent, k: int) -> IntLaurent:
    out = [0] * (k * (len(x.coeffs) - 1) + 1) if x.coeffs else []
    for i, c in enumerate(x.coeffs):
        out[k * i] = c
    return RationalFunction.from_laurent(out, k * x.shift)  # type: ignore[return-value]


def q_factorial(n: int, ctx: ScalarContext = GENERIC, base_power: int = 1) -> Scalar:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ctx.one()
    for m in range(1, n + 1):
        out = out * q_int(m, ctx, base_power)
    return out


@lru_cache(maxsize=None)
def _q_binomial_generic(n: int, j: int, base_power: int) -> IntLaurent:
    num = q_factorial(n, GENERIC, base_power)
    den = q_factorial(j, GENERIC, base_power) * q_factorial(n - j, GENERIC, base_power)
    out = num / den
    assert out.is_laurent()
    return out  # type: ignore[return-value]


def q_binomial(n: int, j: int, ctx: ScalarContext = GENERIC, base_power: int = 1) -> Scalar:
    if n < 0 or j < 0 or j > n:
        raise ValueError(f"q_binomial({n}, {j}) outside 0 <= j <= n")
    x = _q_binomial_generic(n, j, base_power)
    return x if ctx.generic else ctx.coerce(x)


def scalar_to_json(x: Scalar) -> dict:
    return x.to_json()


def scalar_from_json(d: dict) -> Scalar:
    return Cyclotomic.from_json(d) if "r" in d else RationalFunction.from_json(d)
