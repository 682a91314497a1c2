import random

import numpy as np
import pytest

from conftest import brute_parikh
from tribalance import (
    BufferLimitError,
    ConfigurationError,
    InvalidInputError,
    Morphism,
    RangeError,
    apply_morphism,
    fixed_point_prefix,
    incidence_matrix,
    mbonacci_morphism,
    parikh,
    tribonacci_morphism,
    tribonacci_number,
    tribonacci_word,
    word_to_text,
)


def test_tribonacci_images():
    tau = tribonacci_morphism()
    assert [word_to_text(im) for im in tau.images] == ["01", "02", "0"]


def test_apply_morphism_examples():
    tau = tribonacci_morphism()
    assert word_to_text(apply_morphism(tau, "0")) == "01"
    assert apply_morphism(tau, "") == b""
    assert word_to_text(apply_morphism(tau, "01")) == "0102"


def test_apply_morphism_rejects_bad_symbol():
    tau = tribonacci_morphism()
    with pytest.raises(InvalidInputError):
        apply_morphism(tau, [3])


def test_mbonacci_examples():
    assert [word_to_text(im) for im in mbonacci_morphism(3).images] == ["01", "02", "0"]
    assert [word_to_text(im) for im in mbonacci_morphism(2).images] == ["01", "0"]
    assert [word_to_text(im) for im in mbonacci_morphism(4).images] == ["01", "02", "03", "0"]
    with pytest.raises(InvalidInputError):
        mbonacci_morphism(1)


def test_incidence_matrix_tribonacci():
    mat = incidence_matrix(tribonacci_morphism())
    assert mat.tolist() == [[1, 1, 1], [1, 0, 0], [0, 1, 0]]


def test_incidence_matrix_identity():
    ident = Morphism([[0], [1], [2]])
    assert incidence_matrix(ident).tolist() == np.eye(3, dtype=int).tolist()


def test_incidence_matrix_4bonacci():
    mat = incidence_matrix(mbonacci_morphism(4))
    assert mat[0].tolist() == [1, 1, 1, 1]
    for i in range(1, 4):
        assert mat[i].tolist() == [1 if j == i - 1 else 0 for j in range(4)]


def test_incidence_column_sums_are_image_lengths():
    for m in (2, 3, 4, 7):
        mo = mbonacci_morphism(m)
        mat = incidence_matrix(mo)
        assert mat.sum(axis=0).tolist() == [len(im) for im in mo.images]


def test_fixed_point_prefix_examples(tribo):
    assert word_to_text(tribo.slice(0, 14)) == "01020100102010"
    assert word_to_text(tribo.slice(0, 1)) == "0"
    assert word_to_text(tribo.slice(0, 7)) == "0102010"


def test_fibonacci_prefix(fibo):
    assert word_to_text(fibo.slice(0, 8)) == "01001010"


def test_slice_examples(tribo):
    assert tribo.slice(0, 0) == b""
    assert word_to_text(tribo.slice(3, 4)) == "2010"
    with pytest.raises(RangeError):
        tribo.slice(-1, 2)
    with pytest.raises(RangeError):
        tribo.slice(len(tribo), 1)


def test_fixed_point_coherence(tribo):
    # Iterating the morphism from the seed must reproduce prefixes.
    tau = tribo.morphism
    w = b"\x00"
    while len(w) <= 20_000:
        assert tribo.slice(0, len(w)) == w
        w = apply_morphism(tau, w)


def test_iterate_lengths_are_tribonacci_numbers():
    tau = tribonacci_morphism()
    w = b"\x00"
    for k in range(21):
        assert len(w) == tribonacci_number(k)
        w = apply_morphism(tau, w)


def test_prefix_counts_match_direct_count(tribo):
    pc = tribo.prefix_counts
    rng = random.Random(7)
    for n in [0, 1, 2, 3] + [rng.randrange(4, 10_000) for _ in range(50)]:
        direct = brute_parikh(tribo.slice(0, n), 3)
        assert tuple(int(pc[a, n]) for a in range(3)) == direct
    assert pc[:, len(tribo)].sum() == len(tribo)


def test_prefix_count_steps(tribo):
    pc = tribo.prefix_counts
    steps = pc[:, 1:2000] - pc[:, 0:1999]
    assert set(np.unique(steps)) <= {0, 1}
    assert (steps.sum(axis=0) == 1).all()


def test_ones_and_twos_preceded_by_zero(tribo):
    sym = tribo.symbols
    for p in range(1, 50_000):
        if sym[p] in (1, 2):
            assert sym[p - 1] == 0


def test_incidence_parikh_identity(tribo):
    # parikh(image of w) = matrix @ parikh(w) on 1000 random factors.
    tau = tribo.morphism
    mat = incidence_matrix(tau)
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randrange(0, 200)
        start = rng.randrange(0, len(tribo) - n)
        w = tribo.slice(start, n)
        expected = mat @ np.array(parikh(w, 3))
        assert parikh(apply_morphism(tau, w), 3) == tuple(expected.tolist())


def test_growth_is_append_only(tribo):
    head = tribo.slice(0, 1000)
    tribo.ensure(len(tribo) + 1)
    assert tribo.slice(0, 1000) == head


def test_non_prolongable_rejected():
    backwards = Morphism(["10", "0"])  # image of 0 does not start with 0
    with pytest.raises(ConfigurationError):
        fixed_point_prefix(backwards, 0, 10)


def test_prolongable_at_other_seed():
    swapped = Morphism(["1", "10"])  # prolongable at 1, not at 0
    buf = fixed_point_prefix(swapped, 1, 10)
    # fixed point from 1: 1 -> 10 -> 101 -> 10110 -> ...
    assert word_to_text(buf.slice(0, 5)) == "10110"
    with pytest.raises(ConfigurationError):
        fixed_point_prefix(swapped, 0, 10)


def test_buffer_cap_is_hard_error():
    with pytest.raises(BufferLimitError):
        fixed_point_prefix(tribonacci_morphism(), 0, 1 << 20, max_symbols=1 << 10)
    buf = fixed_point_prefix(tribonacci_morphism(), 0, 10, max_symbols=1 << 10)
    with pytest.raises(BufferLimitError):
        buf.ensure((1 << 10) + 1)


def test_alphabet_byte_limit():
    with pytest.raises(InvalidInputError):
        mbonacci_morphism(257)
    assert mbonacci_morphism(256).alphabet_size == 256


def test_min_len_validation():
    with pytest.raises(InvalidInputError):
        fixed_point_prefix(tribonacci_morphism(), 0, 0)
