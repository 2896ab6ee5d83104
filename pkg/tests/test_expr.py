from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from borelq.algebra import UqBorel
from borelq.cartan import cartan_datum
from borelq.expr import (Add, Div, EvalError, Gen, Mul, Neg, Num, ParseError, Pow, QVar, eval_borel, evaluate,
                         parse, to_text)
from borelq.scalars import GENERIC

CORPUS = [line for line in (Path(__file__).parent / "data" / "expr_corpus.txt").read_text().splitlines() if line]
_A2 = UqBorel(cartan_datum("A2"))


def test_corpus_size():
    assert len(CORPUS) == 200


@pytest.mark.parametrize("text", CORPUS)
def test_roundtrip_fixpoint(text):
    tree = parse(text)
    printed = to_text(tree)
    assert parse(printed) == tree
    assert to_text(parse(printed)) == printed


@pytest.mark.parametrize("text", [t for t in CORPUS if "F" not in t][:80])
def test_printed_form_evaluates_the_same(text):
    assert eval_borel(_A2, text) == eval_borel(_A2, to_text(parse(text)))


def test_examples():
    tree = parse("E1*E2 + (q - q^-1)*E2*E1")
    assert isinstance(tree, Add) and len(tree.children) == 2
    assert all(isinstance(c, Mul) for c in tree.children)
    assert parse("K1^-1 E1") == Mul((Pow(Gen("K", 1), -1), Gen("E", 1)))
    assert parse("E1 -E2") == Add((Gen("E", 1), Neg(Gen("E", 2))))
    assert parse("-E1^2") == Neg(Pow(Gen("E", 1), 2))


def test_precedence():
    # ^ before products before sums
    assert parse("q E1^2 + K1") == Add((Mul((QVar(), Pow(Gen("E", 1), 2))), Gen("K", 1)))
    assert parse("E1/q*E2") == Mul((Div(Gen("E", 1), QVar()), Gen("E", 2)))


@pytest.mark.parametrize("text,pos", [("E3", 0), ("E1 + E3", 5), ("E1 +", 4), ("(E1", 3), ("E1 $", 3),
                                      ("E1^E2", 3), ("E1 )", 3)])
def test_errors_with_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse(text, rank=2)
    assert err.value.pos == pos


def test_index_error_message():
    with pytest.raises(ParseError, match="generator index out of range"):
        parse("E3", rank=2)


def test_eval_examples():
    assert eval_borel(_A2, "E1*E1*E2 - (q+q^-1)*E1*E2*E1 + E2*E1*E1") == _A2.zero()
    assert eval_borel(_A2, "K1*K1^-1") == _A2.one()
    assert eval_borel(_A2, "q^2") == _A2.scalar(GENERIC.q_pow(2))
    assert eval_borel(_A2, "E1/(q+q^-1)") == _A2.E(0) * (GENERIC.q_pow(1) + GENERIC.q_pow(-1)).inv()


def test_eval_rejections():
    with pytest.raises(EvalError):
        eval_borel(_A2, "F1*E1")
    with pytest.raises(EvalError):
        eval_borel(_A2, "E1/E2")
    with pytest.raises(EvalError):
        eval_borel(_A2, "E1^-1")
    with pytest.raises(EvalError):
        eval_borel(_A2, "E1/(q - q)")


def test_f_content_cancels():
    # E F - F E lies in U^0, so it is accepted once straightened
    x = evaluate(_A2, parse("E1 F1 - F1 E1"))
    assert x.in_borel()


atoms = st.one_of(st.builds(Num, st.integers(0, 9)), st.just(QVar()),
                  st.builds(Gen, st.sampled_from("EFK"), st.integers(1, 3)))


def _trees(children):
    return st.one_of(
        st.builds(Pow, children, st.integers(-3, 3)),
        st.builds(Neg, children),
        st.builds(lambda xs: Mul(tuple(xs)), st.lists(children, min_size=2, max_size=3)),
        st.builds(Div, children, children),
        st.builds(lambda xs: Add(tuple(xs)), st.lists(children, min_size=2, max_size=3)),
    )


trees = st.recursive(atoms, _trees, max_leaves=12)


@given(trees)
def test_generated_trees_roundtrip(tree):
    text = to_text(tree)
    assert parse(text) == tree


_words = st.lists(st.sampled_from(["E1", "E2", "K1", "K2^-1", "q"]), min_size=3, max_size=6)


@given(_words, st.data())
def test_eval_invariant_under_reassociation(letters, data):
    cut = data.draw(st.integers(1, len(letters) - 1))
    flat = " ".join(letters)
    grouped = f"({' '.join(letters[:cut])})*({' '.join(letters[cut:])})"
    assert eval_borel(_A2, flat) == eval_borel(_A2, grouped)
