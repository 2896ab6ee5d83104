"""Sparse exact Gaussian elimination over any exact field.

Vectors are dicts {column key: scalar}; zero entries are never stored.
Columns are compared through an explicit rank map so pivot choice is
deterministic and independent of dict iteration order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

Vector = dict


def add_scaled(target: dict, source: Mapping, c) -> None:
    """target += c * source, in place, dropping zeros."""
    for k, v in source.items():
        nv = target.get(k)
        nv = v * c if nv is None else nv + v * c
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def _inverse(x):
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def scale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


class Echelon:
    """Incrementally built, fully reduced row echelon form.

    ``order`` maps a column key to its position; the pivot of a row is its
    column of smallest position.  Columns missing from ``order`` are ranked
    by ``fallback`` (default: the key itself).
    """

    def __init__(self, order: Mapping[Hashable, int] | None = None,
                 fallback: Callable[[Hashable], object] | None = None):
        self._order = order
        self._fallback = fallback
        self.rows: dict[Hashable, dict] = {}  # pivot column -> row with 1 at pivot

    def _rank(self, col):
        if self._order is not None and col in self._order:
            return (0, self._order[col])
        return (1, self._fallback(col) if self._fallback else col)

    def _pivot(self, v: Mapping):
        return min(v, key=self._rank)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        """Remainder of v modulo the row space (canonical for the row space)."""
        w = dict(v)
        for col in [c for c in w if c in self.rows]:
            c = w.get(col)
            if c:
                add_scaled(w, self.rows[col], -c)
        return w

    def add(self, v: Mapping) -> bool:
        """Insert v; return True if it enlarged the row space."""
        w = self.reduce(v)
        if not w:
            return False
        p = self._pivot(w)
        inv = _inverse(w[p])
        w = {k: x * inv for k, x in w.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                add_scaled(row, w, -c)
        self.rows[p] = w
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list:
        return sorted(self.rows, key=self._rank)

    def coordinates(self, v: Mapping) -> dict | None:
        """Coefficients c_p with v = sum_p c_p row_p, or None if v is not in the span."""
        w = self.reduce(v)
        if w:
            return None
        return {p: v[p] for p in self.rows if v.get(p)}


def rank(vectors: Iterable[Mapping], order=None) -> int:
    e = Echelon(order)
    for v in vectors:
        e.add(v)
    return len(e)


def nullspace(rows: Iterable[Mapping], columns: list) -> list[dict]:
    """Basis of {x : row . x = 0 for all rows}, over the given column list."""
    order = {c: i for i, c in enumerate(columns)}
    e = Echelon(order)
    for r in rows:
        e.add(r)
    free = [c for c in columns if c not in e.rows]
    basis = []
    for f in free:
        x = {f: 1}
        for p, row in e.rows.items():
            c = row.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return basis


def solve(rows: list[Mapping], rhs: list, columns: list):
    """One solution x of rows . x = rhs, or None if inconsistent."""
    marker = object()
    order = {c: i for i, c in enumerate(columns)}
    e = Echelon(order, fallback=lambda c: 0)
    for r, b in zip(rows, rhs):
        aug = dict(r)
        if b:
            aug[marker] = -b
        e.add(aug)
    if marker in e.rows:
        return None
    x = {}
    for p, row in e.rows.items():
        c = row.get(marker)
        if c:
            x[p] = -c
    return x
