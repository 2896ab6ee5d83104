import pytest

from borelq.cartan import (CartanError, all_reduced_words, cartan_datum, default_frame, degrees_up_to_height,
                           is_nonneg, kostant_dim, longest_element, positive_root_frame, reflect_root,
                           root_count, weyl_group, word_matrix, mat_apply)

TYPES = {"A1": (2, 1), "A2": (6, 3), "B2": (8, 4), "G2": (12, 6)}


def test_g2_symmetrised_matrix():
    g2 = cartan_datum("G2")
    assert g2.C == ((2, -1), (-3, 2))
    assert g2.D == (3, 1)
    assert g2.DC == ((6, -3), (-3, 2))
    assert g2.d0 == 3


def test_symmetrised_matrices():
    assert cartan_datum("A2").DC == ((2, -1), (-1, 2))
    B2 = cartan_datum("B2").DC
    assert B2 == tuple(zip(*B2))
    for t in TYPES:
        dc = cartan_datum(t).DC
        assert dc == tuple(zip(*dc))


@pytest.mark.parametrize("t", TYPES)
def test_weyl_order_and_root_count(t):
    datum = cartan_datum(t)
    order, N = TYPES[t]
    assert len(weyl_group(datum)) == order
    assert root_count(datum) == N
    assert default_frame(datum).N == N


@pytest.mark.parametrize("t", TYPES)
def test_w0_negates_positive_roots(t):
    datum = cartan_datum(t)
    frame = default_frame(datum)
    w0 = longest_element(datum)
    for b in frame.betas:
        img = mat_apply(w0.matrix, b)
        assert all(x <= 0 for x in img) and any(img)


@pytest.mark.parametrize("t", TYPES)
def test_each_simple_root_once(t):
    frame = default_frame(cartan_datum(t))
    for i in range(frame.rank):
        alpha = tuple(1 if j == i else 0 for j in range(frame.rank))
        assert frame.betas.count(alpha) == 1
    assert len(set(frame.betas)) == frame.N
    assert all(is_nonneg(b) for b in frame.betas)


def test_default_frames():
    assert default_frame(cartan_datum("A2")).w0_word == (0, 1, 0)
    assert default_frame(cartan_datum("A2")).betas == ((1, 0), (1, 1), (0, 1))
    assert default_frame(cartan_datum("B2")).betas == ((1, 0), (2, 1), (1, 1), (0, 1))
    assert default_frame(cartan_datum("G2")).betas == ((1, 0), (1, 1), (2, 3), (1, 2), (1, 3), (0, 1))


def test_reflection_is_involution():
    datum = cartan_datum("G2")
    for i in range(2):
        for v in [(1, 0), (0, 1), (2, 3), (1, 2)]:
            assert reflect_root(datum, i, reflect_root(datum, i, v)) == v


@pytest.mark.parametrize("t", ["A2", "B2", "G2"])
def test_all_reduced_words_give_w0(t):
    datum = cartan_datum(t)
    w0 = longest_element(datum)
    words = all_reduced_words(datum, w0)
    assert len(words) == 2
    for w in words:
        assert word_matrix(datum, w) == w0.matrix
        frame = positive_root_frame(datum, w)
        assert sorted(frame.betas) == sorted(default_frame(datum).betas)


def test_bad_word_rejected():
    with pytest.raises(CartanError):
        positive_root_frame(cartan_datum("A2"), (1, 1, 2), one_based=True)
    with pytest.raises(CartanError):
        cartan_datum("G3")
    with pytest.raises(CartanError):
        reflect_root(cartan_datum("A2"), 2, (1, 0))


@pytest.mark.parametrize("t,eta,expected", [
    ("A1", (5,), 1), ("A2", (1, 1), 2), ("A2", (2, 2), 3), ("B2", (2, 1), 3),
    ("B2", (2, 2), 4), ("G2", (1, 3), 4), ("G2", (2, 3), 7), ("G2", (0, 0), 1),
])
def test_kostant_values(t, eta, expected):
    assert kostant_dim(default_frame(cartan_datum(t)), eta) == expected


@pytest.mark.parametrize("t", ["A2", "B2", "G2"])
def test_kostant_is_word_independent(t):
    datum = cartan_datum(t)
    frames = [positive_root_frame(datum, w) for w in all_reduced_words(datum, longest_element(datum))]
    for eta in degrees_up_to_height(2, 6):
        assert len({kostant_dim(f, eta) for f in frames}) == 1


def test_pbw_indices_match_kostant():
    frame = default_frame(cartan_datum("B2"))
    for eta in degrees_up_to_height(2, 6):
        ks = frame.pbw_indices(eta)
        assert len(ks) == kostant_dim(frame, eta)
        assert all(frame.degree(k) == eta for k in ks)
