import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from borelq.algebra import (CACHE_VERSION, AlgebraError, BasisCache, ReducedElement, UqBorel, dimension_check,
                            pbw_check, serre_check, smash_check)
from borelq.cartan import cartan_datum, degrees_up_to_height, kostant_dim, positive_root_frame
from borelq.scalars import GENERIC, ScalarContext, q_int

q = GENERIC.q_pow(1)


def test_k_commutation(A1, A2):
    assert A1.K(0) * A1.E(0) == A1.E(0) * A1.K(0) * q ** 2
    # K_1 E_2 = q^{-1} E_2 K_1 in A2
    assert A2.K(0) * A2.E(1) == A2.E(1) * A2.K(0) * q ** -1
    assert A2.K((1, -1)) * A2.K((-1, 1)) == A2.one()


def test_product_example(A1):
    x = A1.E(0) * A1.K(0)
    assert x * x == A1.E(0) * A1.E(0) * A1.K(0, 2) * q ** 2
    assert str(x * x) == "q^2*E1^2*K1^2"


def test_ef_relation(A1):
    ef = A1.straighten([("E", 0), ("F", 0)]) - A1.straighten([("F", 0), ("E", 0)])
    K = A1.letter("K", 0)
    Kinv = A1.letter("K", 0, -1)
    assert ef == (K - Kinv).scale((q - q ** -1).inv())


@pytest.mark.parametrize("t", ["A2", "B2", "G2"])
def test_serre_elements_vanish(algebras, t):
    assert all(row["pass"] for row in serre_check(algebras[t]))


def test_a2_serre_element_shape(A2):
    s = A2.serre_element(0, 1)
    assert s == {(0, 0, 1): 1, (0, 1, 0): -q_int(2), (1, 0, 0): 1}
    assert A2.serre_degree(0, 1) == (2, 1)
    assert A2.graded_basis((2, 1)).basis_words == [(0, 0, 1), (0, 1, 0)]
    # E2 E1 E1 = [2] E1 E2 E1 - E1 E1 E2
    assert A2.word_coords((1, 0, 0)) == {(0, 1, 0): q_int(2), (0, 0, 1): -1}


@pytest.mark.parametrize("t,h", [("A1", 6), ("A2", 6), ("B2", 6), ("G2", 5)])
def test_graded_dimensions(algebras, t, h):
    rows = dimension_check(algebras[t], h)
    assert rows and all(r["pass"] for r in rows)


def test_dimension_with_other_word():
    datum = cartan_datum("B2")
    alg = UqBorel(datum, frame=positive_root_frame(datum, (2, 1, 2, 1), one_based=True))
    assert all(r["pass"] for r in dimension_check(alg, 5))
    assert pbw_check(alg, 4)["pass"]


def test_root_vectors_a2(A2):
    rv = [str(x) for x in A2.root_vectors()]
    assert rv == ["E1", "-E1*E2 + q^-1*E2*E1", "E2"]


def test_cancellation_levels(algebras):
    algebras["G2"].root_vectors()
    assert algebras["G2"].cancellation_levels == ["prenormal"] * 4 + ["serre", "prenormal"]


@pytest.mark.parametrize("t", ["A2", "B2"])
def test_pbw_basis(algebras, t):
    rep = pbw_check(algebras[t], 5)
    assert rep["pass"] and rep["root_vectors_ok"]


def test_braid_on_generator(A1, A2):
    assert str(A1.T_generator(0, 0)) == "-F1*K1"
    assert str(A2.T_generator(0, 1)) == "-E1*E2 + q^-1*E2*E1"


def _elements(alg: UqBorel, max_len: int = 3):
    words = [()]
    for eta in degrees_up_to_height(alg.n, max_len, 1):
        words.extend(alg.graded_basis(eta).basis_words)
    mono = st.tuples(st.sampled_from(words), st.tuples(*[st.integers(-1, 1)] * alg.n))
    coeff = st.sampled_from([1, -1, 2, q, q ** -1, q + 1])
    return st.dictionaries(mono, coeff, min_size=1, max_size=3).map(lambda d: ReducedElement(alg, d))


_A2 = UqBorel(cartan_datum("A2"))


@given(_elements(_A2), _elements(_A2), _elements(_A2))
def test_associativity_a2(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(_elements(_A2), _elements(_A2), _elements(_A2))
def test_distributivity_a2(x, y, z):
    assert x * (y + z) == x * y + x * z


def test_k_moves_past_words(A2):
    lam = (1, -1)
    for eta in degrees_up_to_height(2, 3, 1):
        for w in A2.graded_basis(eta).basis_words:
            e = ReducedElement(A2, {(w, (0, 0)): 1})
            assert A2.K(lam) * e == e * A2.K(lam) * q ** A2.pairing(lam, eta)


def test_negative_degree_rejected(A2):
    with pytest.raises(AlgebraError):
        A2.graded_basis((-1, 1))


def test_cache_warm_equals_cold(tmp_path):
    datum = cartan_datum("B2")
    cold = UqBorel(datum, cache=BasisCache(tmp_path))
    dims_cold = {tuple(r["eta"]): cold.graded_basis(r["eta"]).basis_words for r in dimension_check(cold, 5)}
    assert cold.cache.misses > 0 and list(tmp_path.glob("*.json"))
    warm = UqBorel(datum, cache=BasisCache(tmp_path))
    dims_warm = {tuple(r["eta"]): warm.graded_basis(r["eta"]).basis_words for r in dimension_check(warm, 5)}
    assert warm.cache.hits > 0 and warm.cache.misses == 0
    assert dims_warm == dims_cold
    for eta in dims_cold:
        for w in warm.graded_basis(eta).words:
            assert warm.word_coords(w) == cold.word_coords(w)


def test_cache_ignores_other_versions(tmp_path):
    datum = cartan_datum("A2")
    UqBorel(datum, cache=BasisCache(tmp_path)).graded_basis((2, 1))
    for path in tmp_path.glob("*.json"):
        doc = json.loads(path.read_text())
        doc["version"] = CACHE_VERSION + 1
        doc["payload"]["basis_words"] = [[9, 9, 9]]
        path.write_text(json.dumps(doc))
    fresh = UqBorel(datum, cache=BasisCache(tmp_path))
    assert fresh.graded_basis((2, 1)).basis_words == [(0, 0, 1), (0, 1, 0)]
    assert fresh.cache.hits == 0


def test_smash_product_a1(A1):
    assert smash_check(A1, 4)["pass"]


def test_root_of_unity_context():
    alg = UqBorel(cartan_datum("A1"), ScalarContext(5))
    x = alg.E(0) * alg.K(0)
    assert x * x == alg.E(0) * alg.E(0) * alg.K(0, 2) * alg.q(2)
