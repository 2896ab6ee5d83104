"""Expression language for algebra elements.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | 'q' | ('E' | 'F' | 'K') INT | '(' expr ')'

``^`` binds tighter than products, which bind tighter than sums.  Juxtaposition
continues a product only when the next token starts an atom, so ``E1 -E2``
is a difference.  ``/`` is only allowed with a scalar denominator (checked at
evaluation time).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .algebra import AlgebraElement, ReducedElement, UqBorel


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} at position {pos}")


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class QVar:
    pass


@dataclass(frozen=True)
class Gen:
    kind: str  # 'E', 'F' or 'K'
    index: int  # 1-based, as written


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Neg:
    child: "Expr"


@dataclass(frozen=True)
class Mul:
    children: tuple


@dataclass(frozen=True)
class Div:
    num: "Expr"
    den: "Expr"


@dataclass(frozen=True)
class Add:
    children: tuple


Expr = Union[Num, QVar, Gen, Pow, Neg, Mul, Div, Add]

_TOKEN = re.compile(r"\s*(?:(\d+)|([EFK])(\d+)|(q)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(0) + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("gen", (m.group(2), int(m.group(3))), start))
        elif m.group(4):
            toks.append(("q", None, start))
        else:
            toks.append(("op", m.group(5), start))
        pos = m.end(0)
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, rank: int | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.rank = rank

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])

    def parse(self) -> Expr:
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("unexpected trailing input", t[2])
        return e

    def expr(self) -> Expr:
        items = [self.term()]
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            items.append(Neg(t) if op == "-" else t)
        return items[0] if len(items) == 1 else Add(tuple(items))

    def _starts_atom(self) -> bool:
        t = self.peek()
        return t[0] in ("num", "gen", "q") or (t[0] == "op" and t[1] == "(")

    def term(self) -> Expr:
        items = [self.unary()]
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                items.append(self.unary())
            elif t[0] == "op" and t[1] == "/":
                self.take()
                den = self.unary()
                left = items[0] if len(items) == 1 else Mul(tuple(items))
                items = [Div(left, den)]
            elif self._starts_atom():
                items.append(self.unary())
            else:
                break
        return items[0] if len(items) == 1 else Mul(tuple(items))

    def unary(self) -> Expr:
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            sign = 1
            t = self.peek()
            if t[0] == "op" and t[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "num":
                raise ParseError("exponent must be an integer", t[2])
            return Pow(base, sign * t[1])
        return base

    def atom(self) -> Expr:
        t = self.take()
        if t[0] == "num":
            return Num(t[1])
        if t[0] == "q":
            return QVar()
        if t[0] == "gen":
            kind, idx = t[1]
            if idx < 1 or (self.rank is not None and idx > self.rank):
                raise ParseError(f"generator index out of range: {kind}{idx}", t[2])
            return Gen(kind, idx)
        if t[0] == "op" and t[1] == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError("expected a number, q, a generator or '('", t[2])


def parse(text: str, rank: int | None = None) -> Expr:
    return _Parser(text, rank).parse()


# -- printing ---------------------------------------------------------------------

def _atomic(e: Expr) -> bool:
    return isinstance(e, (Num, QVar, Gen))


def to_text(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, QVar):
        return "q"
    if isinstance(e, Gen):
        return f"{e.kind}{e.index}"
    if isinstance(e, Pow):
        b = to_text(e.base) if _atomic(e.base) else f"({to_text(e.base)})"
        return f"{b}^{e.exp}"
    if isinstance(e, Neg):
        c = e.child
        inner = to_text(c) if isinstance(c, (Num, QVar, Gen, Pow, Neg)) else f"({to_text(c)})"
        return f"-{inner}"
    if isinstance(e, Mul):
        parts = []
        for c in e.children:
            s = to_text(c)
            parts.append(s if isinstance(c, (Num, QVar, Gen, Pow)) else f"({s})")
        return "*".join(parts)
    if isinstance(e, Div):
        left = to_text(e.num)
        if not isinstance(e.num, (Num, QVar, Gen, Pow, Mul, Div)):
            left = f"({left})"
        right = to_text(e.den)
        if not isinstance(e.den, (Num, QVar, Gen, Pow)):
            right = f"({right})"
        return f"{left}/{right}"
    if isinstance(e, Add):
        out = ""
        for k, c in enumerate(e.children):
            if k == 0:
                out += to_text(c) if not isinstance(c, Add) else f"({to_text(c)})"
            elif isinstance(c, Neg):
                # a - x*y parses with the whole product negated
                body = c.child
                out += f" - {to_text(body) if not isinstance(body, Add) else f'({to_text(body)})'}"
            else:
                out += f" + {to_text(c) if not isinstance(c, Add) else f'({to_text(c)})'}"
        return out
    raise TypeError(f"not an expression: {e!r}")


# -- evaluation ---------------------------------------------------------------------

def _scalar_of(alg: UqBorel, x: AlgebraElement):
    """The scalar value of x, or None if x is not a multiple of 1."""
    z = ((), alg.zero_weight, ())
    if not x.terms:
        return alg.ctx.zero()
    if set(x.terms) == {z}:
        return x.terms[z]
    return None


def evaluate(alg: UqBorel, e: Expr) -> AlgebraElement:
    """Value in U, in pre-normal form (F letters allowed)."""
    ctx = alg.ctx
    unit = AlgebraElement(alg, {((), alg.zero_weight, ()): ctx.one()})
    if isinstance(e, Num):
        return unit.scale(ctx.from_int(e.value))
    if isinstance(e, QVar):
        return unit.scale(ctx.q_pow(1))
    if isinstance(e, Gen):
        if e.index > alg.n:
            raise EvalError(f"generator index out of range: {e.kind}{e.index}")
        return alg.letter(e.kind, e.index - 1)
    if isinstance(e, Neg):
        return -evaluate(alg, e.child)
    if isinstance(e, Add):
        out = AlgebraElement(alg, {})
        for c in e.children:
            out = out + evaluate(alg, c)
        return out
    if isinstance(e, Mul):
        out = unit
        for c in e.children:
            out = out * evaluate(alg, c)
        return out
    if isinstance(e, Div):
        den = _scalar_of(alg, evaluate(alg, e.den))
        if den is None:
            raise EvalError("division is only defined by scalars")
        if not den:
            raise EvalError("division by zero")
        return evaluate(alg, e.num).scale(den.inv())
    if isinstance(e, Pow):
        if e.exp < 0:
            if isinstance(e.base, Gen) and e.base.kind == "K":
                base = alg.letter("K", e.base.index - 1, -1)
            else:
                s = _scalar_of(alg, evaluate(alg, e.base))
                if s is None or not s:
                    raise EvalError("negative exponents are only allowed on K generators and nonzero scalars")
                base = unit.scale(s.inv())
            m = -e.exp
        else:
            base = evaluate(alg, e.base)
            m = e.exp
        out = unit
        for _ in range(m):
            out = out * base
        return out
    raise TypeError(f"not an expression: {e!r}")


def eval_borel(alg: UqBorel, text_or_expr) -> ReducedElement:
    """Parse (if needed), evaluate and reduce an element of U^{>=0}."""
    e = parse(text_or_expr, alg.n) if isinstance(text_or_expr, str) else text_or_expr
    x = evaluate(alg, e)
    if not x.in_borel():
        raise EvalError("expression has F content and is not in U>=0")
    return alg.reduce(x)
