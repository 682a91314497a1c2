import random

import pytest

from conftest import brute_factors
from tribalance import (
    InvariantViolationError,
    abelian_profile,
    bispecial_lengths,
    boundary_set,
    central_set,
    factor_index,
    is_min_complexity_length,
    min_complexity_lengths,
    parikh_set,
    right_special_factor,
    successor_length,
    tribonacci_word,
    twelve_vector_geometry,
    verify_equivalences,
    word_to_text,
)
from tribalance.special import right_special_parikh


def test_right_special_small(tribo):
    r0 = right_special_factor(tribo, 0)
    assert r0.word == b"" and r0.parikh == (0, 0, 0) and r0.is_bispecial

    r1 = right_special_factor(tribo, 1)
    assert word_to_text(r1.word) == "0" and r1.is_bispecial

    r3 = right_special_factor(tribo, 3)
    assert word_to_text(r3.word) == "010" and r3.is_bispecial

    r2 = right_special_factor(tribo, 2)
    assert not r2.is_bispecial


def test_right_special_matches_brute_force(tribo):
    # Oracle: group every factor of length n+1 (from a long prefix) by its
    # length-n prefix and count extension letters.
    sym = tribo.symbols[:30_000]
    for n in (1, 4, 9, 25, 60):
        ext: dict[bytes, set[int]] = {}
        for w in brute_factors(sym, n + 1):
            ext.setdefault(w[:n], set()).add(w[-1])
        specials = [w for w, s in ext.items() if len(s) >= 2]
        assert len(specials) == 1
        record = right_special_factor(tribo, n)
        assert record.word == specials[0]
        assert record.right_extensions == 3


def test_right_special_extension_degree(tribo):
    for n in range(1, 40):
        assert right_special_factor(tribo, n).right_extensions == 3


def test_right_special_index_route_agrees(tribo):
    index = factor_index(tribo, 300)
    rng = random.Random(11)
    for n in [0, 1, 2, 3] + [rng.randrange(4, 300) for _ in range(25)]:
        assert right_special_parikh(tribo, index, n) == right_special_factor(tribo, n).parikh


def test_bispecial_lengths_closed_form(tribo):
    assert bispecial_lengths(30) == [1, 3, 7, 14, 27]
    assert bispecial_lengths(0) == []
    assert bispecial_lengths(30, buffer=tribo) == [1, 3, 7, 14, 27]


def test_bispecial_lengths_are_palindromic_prefixes(tribo):
    for length in bispecial_lengths(200):
        prefix = tribo.slice(0, length)
        assert prefix == prefix[::-1]


def test_bispecial_flags_match_closed_form(tribo):
    # The empty word is trivially bispecial; the closed form starts at
    # length 1 (its n=1 case is carved out separately in the five-way
    # characterization).
    listed = set(bispecial_lengths(60)) | {0}
    for n in range(0, 61):
        assert right_special_factor(tribo, n).is_bispecial == (n in listed)


def test_central_set_examples(tribo):
    c1 = central_set(tribo, 1)
    assert set(c1.vectors) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}

    b1 = boundary_set(tribo, 1)
    assert set(b1.vectors) == {(-1, 1, 1), (1, -1, 1), (1, 1, -1)}


def test_central_contained_in_realized(tribo):
    for n in (1, 2, 7, 30, 100):
        c = central_set(tribo, n)
        realized = parikh_set(tribo, n).vectors
        assert set(c.vectors) <= realized


def test_boundary_meets_realized_iff_not_min(tribo):
    for n in range(1, 80):
        realized = parikh_set(tribo, n).vectors
        b = set(boundary_set(tribo, n).vectors)
        assert (len(realized) == 3) == (not (b & realized))


def test_boundary_disjoint_at_min_length(tribo):
    assert not (set(boundary_set(tribo, 4).vectors) & parikh_set(tribo, 4).vectors)


def test_twelve_vector_geometry(tribo):
    g = twelve_vector_geometry(tribo, 10)
    assert len(g.neighborhood) == 12
    sizes = sorted((len(r.vectors) for r in g.regions), reverse=True)
    assert sizes == [7, 7, 7, 6, 6, 6]
    assert g.containing
    # The full enumeration finds one extra maximal set: the triangle of
    # the three boundary vectors.
    assert g.clique_sizes == (7, 7, 7, 6, 6, 6, 6)
    assert len(g.extra_cliques) == 1
    (extra,) = g.extra_cliques
    assert set(boundary_set(tribo, 10).vectors) <= extra


def test_geometry_at_full_complexity(tribo):
    g = twelve_vector_geometry(tribo, 3914)
    containing_regions = [g.regions[i] for i in g.containing]
    assert all(r.kind == "hexagon" for r in containing_regions)
    assert len(parikh_set(tribo, 3914).vectors) == 7


def test_geometry_region_membership_counts(tribo):
    # Hexagons are unit balls around the central vectors; each of the 12
    # vectors belongs to at least one region and the union is everything.
    g = twelve_vector_geometry(tribo, 17)
    union = set()
    for r in g.regions:
        union |= r.vectors
    assert union == set(g.neighborhood)


def test_min_complexity_closed_form():
    assert is_min_complexity_length(1)
    assert is_min_complexity_length(2)  # (1 + 4 - 1) / 2
    assert not is_min_complexity_length(30)
    assert min_complexity_lengths(30) == [1, 2, 4, 8, 15, 28]
    assert min_complexity_lengths(5000) == [
        1, 2, 4, 8, 15, 28, 52, 96, 177, 326, 600, 1104, 2031, 3736,
    ]


def test_successor_length_examples(tribo):
    assert successor_length(tribo, 1) == 2
    assert successor_length(tribo, 2) == 4  # image of "0" plus 0 is "010"


def test_successor_maps_min_complexity_into_itself(tribo):
    for n in min_complexity_lengths(600):
        assert is_min_complexity_length(successor_length(tribo, n))


def test_successor_formula(tribo):
    for n in range(1, 120):
        value = successor_length(tribo, n)
        i, j, _ = right_special_factor(tribo, n - 1).parikh
        assert value == n + i + j + 1


def test_boundary_propagation(tribo):
    # If the realized set meets the boundary triple at n, it does so again
    # at the successor length.
    tribo.ensure(250_000)
    index = factor_index(tribo, 1300)
    rows = abelian_profile(tribo, 1, 1300, collect_vectors=True)
    vecs = {r.n: set(r.vectors) for r in rows}

    def meets_boundary(n: int) -> bool:
        i, j, k = right_special_parikh(tribo, index, n - 1)
        b = {(i - 1, j + 1, k + 1), (i + 1, j - 1, k + 1), (i + 1, j + 1, k - 1)}
        return bool(b & vecs[n])

    def successor(n: int) -> int:
        i, j, _ = right_special_parikh(tribo, index, n - 1)
        return n + i + j + 1

    for n in range(1, 501):
        if meets_boundary(n):
            assert meets_boundary(successor(n))


def test_imbalance_forces_complexity(tribo):
    # If some factor of length n carries at least two more leading-letter
    # occurrences than the right special factor of length n-1, the abelian
    # complexity at n exceeds 3.
    index = factor_index(tribo, 600)
    rows = abelian_profile(tribo, 1, 500, collect_vectors=True)
    for row in rows:
        i, j, _ = right_special_parikh(tribo, index, row.n - 1)
        max_zero = max(v[0] for v in row.vectors)
        max_one = max(v[1] for v in row.vectors)
        if max_zero >= i + 2 or max_one >= j + 2:
            assert row.rho > 3


def test_equivalences(tribo):
    rows = verify_equivalences(tribo, 60)
    agree_set = {r.n for r in rows if r.complexity_is_min}
    assert agree_set & set(range(1, 31)) == {1, 2, 4, 8, 15, 28}
    for r in rows:
        assert r.all_agree()


def test_equivalences_bispecial_at_15(tribo):
    rows = verify_equivalences(tribo, 15)
    assert rows[14].bispecial_exists  # length-14 bispecial factor exists
    assert 14 in bispecial_lengths(14)
