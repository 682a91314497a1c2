"""Shared fixtures and independent oracles.

The oracles are deliberately primitive: direct window enumeration over a
materialized prefix, and counting with ``collections.Counter``.  They never
touch prefix sums, fingerprints, or the factor index, so agreement with
the library is meaningful.
"""

from __future__ import annotations

from collections import Counter

import pytest

from tribalance import compute_spectral_data, mbonacci_word, tribonacci_word


@pytest.fixture(scope="session")
def tribo():
    return tribonacci_word(200_000)


@pytest.fixture(scope="session")
def fibo():
    return mbonacci_word(2, 50_000)


@pytest.fixture(scope="session")
def fourbo():
    return mbonacci_word(4, 20_000)


@pytest.fixture(scope="session")
def sd():
    return compute_spectral_data()


# -- oracles ----------------------------------------------------------------

def brute_factors(symbols: bytes, n: int) -> set[bytes]:
    """Every distinct length-n window of the materialized symbols."""
    return {symbols[i : i + n] for i in range(len(symbols) - n + 1)}


def brute_parikh(word, m: int) -> tuple[int, ...]:
    counts = Counter(word)
    return tuple(counts.get(a, 0) for a in range(m))


def brute_parikh_set(symbols: bytes, n: int, m: int) -> set[tuple[int, ...]]:
    return {brute_parikh(w, m) for w in brute_factors(symbols, n)}
