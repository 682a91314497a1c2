"""Parikh vectors, abelian complexity, balance checking, desubstitution.

A Parikh vector is the tuple of per-letter occurrence counts of a factor.
The abelian complexity of a word at length n is the number of distinct
Parikh vectors among its length-n factors; a word is C-balanced when the
per-letter counts of any two equal-length factors differ by at most C.
Everything here reduces to O(1) Parikh queries against the buffer's
per-letter prefix sums, plus saturation certificates that a scanned region
contains every factor of the relevant length.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidInputError,
    NotAFactorError,
    RangeError,
    SaturationError,
)
from .factors import SaturationRule, factor_index, scan_distinct_factors
from .words import (
    WordBuffer,
    WordLike,
    apply_morphism,
    as_word,
    tribonacci_morphism,
    tribonacci_word,
)

ParikhVector = tuple[int, ...]


def parikh(w: WordLike, alphabet_size: int) -> ParikhVector:
    """Per-letter occurrence counts of a finite word."""
    w = as_word(w)
    if any(c >= alphabet_size for c in w):
        raise InvalidInputError("word uses symbols outside the alphabet")
    return tuple(w.count(a) for a in range(alphabet_size))


def window_parikh(buffer: WordBuffer, start: int, length: int) -> ParikhVector:
    """Parikh vector of the window at ``start``; O(1) via prefix sums."""
    if start < 0 or length < 0 or start + length > len(buffer):
        raise RangeError(
            f"window [{start}, {start + length}) outside buffer of length {len(buffer)}"
        )
    pc = buffer.prefix_counts
    return tuple(int(x) for x in pc[:, start + length] - pc[:, start])


@dataclass
class ParikhSet:
    """Parikh vectors of the distinct factors of one length.

    ``certified`` records whether the scan provably saw every factor
    (reached the complexity target); only then does
    ``len(vectors)`` equal the abelian complexity.
    """

    n: int
    vectors: frozenset[ParikhVector]
    factor_count: int
    certified: bool
    last_new_position: int

    def __len__(self) -> int:
        return len(self.vectors)


def parikh_set(buffer: WordBuffer, n: int, rule: SaturationRule = SaturationRule()) -> ParikhSet:
    """Set of Parikh vectors over the distinct length-n factors.

    Scans windows left to right with exact distinct counting and stops at
    the complexity target; a certified result is complete.  If the position
    cap is reached first, the raised ``SaturationError`` carries the
    partial set.
    """
    if n < 1:
        raise InvalidInputError(f"factor length must be >= 1, got {n}")
    try:
        scan = scan_distinct_factors(buffer, n, rule)
    except SaturationError as err:
        partial = err.partial
        err.partial = _vectors_from_positions(buffer, n, partial)
        raise
    return _vectors_from_positions(buffer, n, scan)


def _vectors_from_positions(buffer: WordBuffer, n: int, scan) -> ParikhSet:
    pc = buffer.prefix_counts
    pos = np.asarray(scan.first_positions, dtype=np.int64)
    vecs = (pc[:, pos + n] - pc[:, pos]).T
    vectors = frozenset(tuple(int(x) for x in v) for v in vecs)
    return ParikhSet(
        n=n,
        vectors=vectors,
        factor_count=scan.count,
        certified=scan.certified,
        last_new_position=scan.last_new_position,
    )


def abelian_complexity(buffer: WordBuffer, n: int, rule: SaturationRule = SaturationRule()) -> int:
    """Number of distinct Parikh vectors among length-n factors."""
    return len(parikh_set(buffer, n, rule).vectors)


def certified_window_bound(buffer: WordBuffer, n: int, rule: SaturationRule = SaturationRule()) -> int:
    """Last window start that must be scanned to see every length-n factor.

    Uses a cached factor index when one covers the full position cap for n,
    otherwise a direct scan.
    """
    index = getattr(buffer, "_index_cache", None)
    if index is not None and index.region_len >= rule.resolved_cap(n) + n:
        return index.certify(n, rule)
    return scan_distinct_factors(buffer, n, rule).last_new_position


def _window_counts(buffer: WordBuffer, n: int, bound: int) -> np.ndarray:
    """Letter-count matrix of shape (alphabet, bound + 1) for windows
    starting at 0..bound."""
    buffer.ensure(bound + n)
    pc = buffer.prefix_counts
    return pc[:, n : n + bound + 1] - pc[:, : bound + 1]


@dataclass
class ProfileRow:
    """Per-length summary: abelian complexity and per-letter imbalance."""

    n: int
    rho: int
    max_imbalance: tuple[int, ...]
    vectors: tuple[ParikhVector, ...] | None = None


def abelian_profile(buffer: WordBuffer, n_from: int, n_to: int,
                    rule: SaturationRule = SaturationRule(),
                    threads: int = 1,
                    collect_vectors: bool = False) -> list[ProfileRow]:
    """Certified ``ProfileRow`` for every n in [n_from, n_to].

    The heavy path: one factor index over the whole range, then a numpy
    window pass per length.  Per-length work is independent, so the range
    is chunked across threads when ``threads > 1``.
    """
    if n_from < 1 or n_to < n_from:
        raise InvalidInputError(f"bad length range [{n_from}, {n_to}]")
    index = factor_index(buffer, n_to, rule)
    pc = buffer.prefix_counts  # materialize once, shared read-only

    def one(n: int) -> ProfileRow:
        bound = index.certify(n, rule)
        counts = pc[:, n : n + bound + 1] - pc[:, : bound + 1]
        imb = tuple(int(x) for x in counts.max(axis=1) - counts.min(axis=1))
        key = _combine_rows(counts, n)
        if key is None:
            _, first = np.unique(counts.T, axis=0, return_index=True)
        else:
            _, first = np.unique(key, return_index=True)
        if collect_vectors:
            vecs = tuple(
                tuple(int(x) for x in counts[:, i])
                for i in sorted(int(j) for j in first)
            )
            return ProfileRow(n, len(first), imb, vectors=vecs)
        return ProfileRow(n, len(first), imb)

    ns = range(n_from, n_to + 1)
    if threads <= 1 or len(ns) < 8:
        return [one(n) for n in ns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, ns))


def _combine_rows(counts: np.ndarray, n: int) -> np.ndarray | None:
    """Injective int64 key per window column, or None if it cannot fit."""
    m = counts.shape[0]
    base = n + 2
    if base ** m >= 2 ** 62:
        return None
    key = counts[0].astype(np.int64)
    for a in range(1, m):
        key = key * base + counts[a]
    return key


def balance_profile(buffer: WordBuffer, max_len: int,
                    rule: SaturationRule = SaturationRule(),
                    threads: int = 1) -> list[ProfileRow]:
    """Per-letter maximum imbalance for each length 1..max_len.

    The imbalance at length n for letter a is max - min of the letter-a
    count over all length-n factors, which equals the largest pairwise
    count difference.
    """
    return abelian_profile(buffer, 1, max_len, rule, threads=threads)


@dataclass
class BalanceWitness:
    """Two equal-length windows exhibiting a letter-count difference."""

    letter: int
    length: int
    pos_u: int
    pos_v: int
    count_u: int
    count_v: int

    @property
    def diff(self) -> int:
        return abs(self.count_u - self.count_v)


def verify_witness(buffer: WordBuffer, letter: int, pos_u: int, pos_v: int,
                   length: int) -> BalanceWitness:
    """Recompute both window counts of ``letter`` and their difference."""
    cu = window_parikh(buffer, pos_u, length)[letter]
    cv = window_parikh(buffer, pos_v, length)[letter]
    return BalanceWitness(letter, length, pos_u, pos_v, cu, cv)


def imbalance_witness_search(buffer: WordBuffer, letter: int, target_diff: int,
                             max_len: int, scan_len: int | None = None,
                             rule: SaturationRule = SaturationRule()) -> BalanceWitness | None:
    """Smallest-length witness with count difference >= target_diff, or None.

    For each length up to ``max_len`` the scan tracks min and max counts of
    the letter (with positions) over all windows in the first ``scan_len``
    symbols; ``scan_len=None`` uses the certified per-length bound instead.
    """
    if scan_len is not None and scan_len > len(buffer):
        raise RangeError(f"scan_len {scan_len} exceeds buffer length {len(buffer)}")
    for n in range(1, max_len + 1):
        if scan_len is None:
            bound = certified_window_bound(buffer, n, rule)
        else:
            if scan_len < n:
                break
            bound = scan_len - n
        counts = _window_counts(buffer, n, bound)[letter]
        hi = int(counts.argmax())
        lo = int(counts.argmin())
        if counts[hi] - counts[lo] >= target_diff:
            return BalanceWitness(letter, n, int(hi), int(lo),
                                  int(counts[hi]), int(counts[lo]))
    return None


def prefix_balance_check(buffer: WordBuffer, n: int,
                         rule: SaturationRule = SaturationRule()) -> bool:
    """True iff every length-n factor's letter counts differ from the
    length-n prefix's by at most 1."""
    bound = certified_window_bound(buffer, n, rule)
    counts = _window_counts(buffer, n, bound)
    pc = buffer.prefix_counts
    prefix = pc[:, n]
    return bool(
        (counts.max(axis=1) <= prefix + 1).all()
        and (counts.min(axis=1) >= prefix - 1).all()
    )


def coordinate_interval_check(pset: ParikhSet) -> bool:
    """True iff each coordinate's value set over the vectors is a
    contiguous integer interval (no gaps)."""
    if not pset.vectors:
        return True
    for coord in zip(*pset.vectors):
        values = set(coord)
        if max(values) - min(values) + 1 != len(values):
            return False
    return True


# ---------------------------------------------------------------------------
# Desubstitution

class DesubForm(enum.Enum):
    """How a factor decomposes against the Tribonacci morphism: the image
    of the preimage, optionally with its leading 0 dropped and/or a 0
    appended."""

    PLAIN = "plain"
    DROP0 = "drop0"
    APPEND0 = "append0"
    DROP0_APPEND0 = "drop0_append0"


@dataclass
class Desubstitution:
    """Preimage word, decomposition form, and length correction delta.

    The invariant relating the factor U to its preimage u is
    parikh(U) = (len(u) + delta, count of 0 in u, count of 1 in u).
    """

    u: bytes
    form: DesubForm
    delta: int

    def reconstruct(self) -> bytes:
        w = apply_morphism(tribonacci_morphism(), self.u)
        if self.form in (DesubForm.DROP0, DesubForm.DROP0_APPEND0):
            w = w[1:]
        if self.form in (DesubForm.APPEND0, DesubForm.DROP0_APPEND0):
            w = w + b"\x00"
        return w


_shared_buffer: WordBuffer | None = None


def _tribonacci_shared() -> WordBuffer:
    global _shared_buffer
    if _shared_buffer is None:
        _shared_buffer = tribonacci_word(4096)
    return _shared_buffer


def is_tribonacci_factor(w: WordLike) -> bool:
    """Exact membership test against a saturated region of the word."""
    w = as_word(w)
    if not w:
        return True
    if any(c > 2 for c in w):
        return False
    buf = _tribonacci_shared()
    index = factor_index(buf, len(w))
    index.certify(len(w))
    return index.contains(w)


def desubstitute(U: WordLike, verify: bool = True) -> Desubstitution:
    """Decompose a factor of the Tribonacci word against its morphism.

    Decoding: a factor starting with 1 or 2 regains the 0 that always
    precedes those letters (a dropped-0 form); the extended word is then
    cut at each 0 into blocks 01 -> 0, 02 -> 1, 0 -> 2, a trailing lone 0
    marking an appended-0 form.  ``verify=False`` skips the factor-of-the-
    word membership check (useful when the caller took U from the buffer).
    """
    U = as_word(U)
    if not U:
        raise InvalidInputError("cannot desubstitute the empty word")
    if any(c > 2 for c in U):
        raise NotAFactorError(f"symbols outside {{0,1,2}} in {U!r}")
    if verify and not is_tribonacci_factor(U):
        raise NotAFactorError(f"{U!r} is not a factor of the Tribonacci word")
    dropped = U[0] != 0
    w = b"\x00" + U if dropped else U
    out = bytearray()
    appended = False
    i = 0
    L = len(w)
    while i < L:
        if w[i] != 0:
            raise NotAFactorError(f"{U!r} cannot be decoded against the morphism")
        if i + 1 < L:
            nxt = w[i + 1]
            if nxt == 1:
                out.append(0)
                i += 2
            elif nxt == 2:
                out.append(1)
                i += 2
            else:
                out.append(2)
                i += 1
        else:
            appended = True
            i += 1
    if dropped and appended:
        form = DesubForm.DROP0_APPEND0
    elif dropped:
        form = DesubForm.DROP0
    elif appended:
        form = DesubForm.APPEND0
    else:
        form = DesubForm.PLAIN
    delta = (1 if appended else 0) - (1 if dropped else 0)
    return Desubstitution(bytes(out), form, delta)
