from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from borelq.linalg import Echelon, nullspace, rank, solve

COLS = list(range(5))
vec = st.dictionaries(st.sampled_from(COLS), st.integers(-3, 3).map(Fraction), max_size=5).map(
    lambda d: {k: v for k, v in d.items() if v})


def _dot(row, x):
    return sum(c * x.get(k, 0) for k, c in row.items())


@given(st.lists(vec, max_size=6))
def test_rank_plus_nullity(rows):
    assert rank(rows) + len(nullspace(rows, COLS)) == len(COLS)


@given(st.lists(vec, max_size=6))
def test_nullspace_vectors_are_solutions(rows):
    for x in nullspace(rows, COLS):
        assert all(_dot(r, x) == 0 for r in rows)


@given(st.lists(vec, min_size=1, max_size=6), vec)
def test_solve_consistent_system(rows, x0):
    rhs = [_dot(r, x0) for r in rows]
    x = solve(rows, rhs, COLS)
    assert x is not None
    assert [_dot(r, x) for r in rows] == rhs


def test_solve_inconsistent():
    assert solve([{0: 1}, {0: 2}], [1, 1], [0]) is None


@given(st.lists(vec, max_size=6), vec)
def test_echelon_membership(rows, v):
    e = Echelon({c: c for c in COLS})
    for r in rows:
        e.add(r)
    coords = e.coordinates(v)
    assert (coords is not None) == e.contains(v)
    if coords is not None:
        total: dict = {}
        for p, c in coords.items():
            for k, x in e.rows[p].items():
                total[k] = total.get(k, 0) + c * x
        assert {k: x for k, x in total.items() if x} == v
