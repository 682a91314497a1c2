"""Distinct-factor enumeration and saturation certification.

Two independent mechanisms are provided.

``scan_distinct_factors`` slides a 127-bit rolling fingerprint over the
buffer and counts distinct windows, confirming every fingerprint match by
symbol comparison so the count is exact, never probabilistic.  It stops as
soon as the factor count reaches the complexity target, which for an
Arnoux-Rauzy word on m letters is (m-1)*n + 1; reaching the target
certifies that every factor of that length has been seen.

``FactorIndex`` builds a suffix automaton over a fixed prefix region and
answers, for every length at once: how many distinct factors the region
contains, and how long a prefix suffices to contain them all.  This is the
bulk path used when thousands of lengths are analyzed together; the
scanner is the per-query path and the cross-check for the index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolationError, SaturationError
from .words import WordBuffer

__all__ = [
    "SaturationRule",
    "ScanResult",
    "default_position_cap",
    "default_target",
    "scan_distinct_factors",
    "FactorIndex",
    "factor_index",
]

# Rolling fingerprint parameters: polynomial hash modulo the Mersenne
# prime 2**127 - 1 with a fixed odd base.
_FP_MOD = (1 << 127) - 1
_FP_BASE = 0x9E3779B97F4A7C15


def default_position_cap(n: int) -> int:
    """Window start positions examined before a scan gives up (64n + 4096).

    The analyzed words are linearly recurrent, so every factor of length n
    first occurs within a small multiple of n; the generous linear cap
    catches configuration errors without unbounded scans.
    """
    return 64 * n + 4096


def default_target(alphabet_size: int, n: int) -> int:
    """Distinct-factor count of an Arnoux-Rauzy word: (m-1)*n + 1."""
    return (alphabet_size - 1) * n + 1


@dataclass(frozen=True)
class SaturationRule:
    """How a factor scan decides it has seen everything.

    ``target``: distinct-factor count that certifies completeness;
    None means the Arnoux-Rauzy count (m-1)*n + 1.
    ``position_cap``: number of window start positions to examine before
    failing; None means 64n + 4096.
    ``certified``: if False, run a fixed scan over all capped positions and
    report what was found without any completeness claim.
    """

    target: int | None = None
    position_cap: int | None = None
    certified: bool = True

    def resolved_target(self, alphabet_size: int, n: int) -> int:
        return self.target if self.target is not None else default_target(alphabet_size, n)

    def resolved_cap(self, n: int) -> int:
        return self.position_cap if self.position_cap is not None else default_position_cap(n)


@dataclass
class ScanResult:
    """Outcome of one distinct-factor scan at a single length."""

    n: int
    count: int
    first_positions: list[int]
    last_new_position: int
    positions_scanned: int
    certified: bool
    extension_found_new: bool | None = None

    @property
    def saturation_end(self) -> int:
        """Prefix length containing every factor found (end of the last
        first occurrence)."""
        return self.last_new_position + self.n


def scan_distinct_factors(buffer: WordBuffer, n: int, rule: SaturationRule = SaturationRule(),
                          extend_after: int = 0) -> ScanResult:
    """Count distinct length-n windows left to right, exactly.

    Windows are keyed by rolling fingerprint and every fingerprint match is
    confirmed by symbol comparison before the window is treated as a
    repeat, so a genuine 127-bit collision cannot corrupt the count.  In
    certified mode the scan stops once the complexity target is reached; if
    the position cap is hit first, a ``SaturationError`` carrying the
    partial result is raised.  ``extend_after`` keeps scanning that many
    positions past the target and records whether any new factor shows up
    (it must not, if the target is the true complexity).
    """
    if n < 1:
        raise InvariantViolationError(f"factor length must be >= 1, got {n}")
    m = buffer.alphabet_size
    cap = rule.resolved_cap(n)
    target = rule.resolved_target(m, n) if rule.certified else None

    # Grow lazily: saturation usually happens within a few multiples of n.
    want = min(cap - 1 + n, max(8 * n + 256, 1024, len(buffer)))
    if want > buffer.max_symbols and n <= buffer.max_symbols:
        want = buffer.max_symbols
    buffer.ensure(want)
    sym = buffer.symbols

    shift = pow(_FP_BASE, n - 1, _FP_MOD)
    h = 0
    for c in sym[:n]:
        h = (h * _FP_BASE + c) % _FP_MOD
    table: dict[int, object] = {h: 0}
    firsts = [0]
    count = 1
    last_new = 0
    stop_at = None
    if target is not None and count >= target:
        if extend_after <= 0:
            cap = 1
        stop_at = extend_after
    p = 0
    limit = cap - 1
    while p < limit:
        p += 1
        if p + n > len(sym):
            want = min(limit + n, max(2 * len(sym), p + n))
            if want > buffer.max_symbols and p + n <= buffer.max_symbols:
                want = buffer.max_symbols
            buffer.ensure(want)
            sym = buffer.symbols
        h = ((h - sym[p - 1] * shift) * _FP_BASE + sym[p + n - 1]) % _FP_MOD
        prev = table.get(h)
        if prev is None:
            table[h] = p
            count += 1
            firsts.append(p)
            last_new = p
        else:
            if isinstance(prev, int):
                if sym[prev : prev + n] == sym[p : p + n]:
                    continue
                table[h] = prev = [prev]
            else:
                if any(sym[q : q + n] == sym[p : p + n] for q in prev):
                    continue
            # True fingerprint collision: same key, different content.
            prev.append(p)
            count += 1
            firsts.append(p)
            last_new = p
        if target is not None and count >= target and stop_at is None:
            if extend_after <= 0:
                break
            stop_at = p + extend_after
        if stop_at is not None and p >= stop_at:
            break
    positions_scanned = p + 1
    # Exceeding the target means the complexity assumption behind it was
    # wrong, so completeness cannot be claimed either.
    certified = target is not None and count == target
    result = ScanResult(
        n=n,
        count=count,
        first_positions=firsts,
        last_new_position=last_new,
        positions_scanned=positions_scanned,
        certified=certified,
        extension_found_new=None,
    )
    if target is not None and extend_after > 0 and count >= target:
        # Any factor discovered inside the extension window pushed the
        # count past the target.
        result.extension_found_new = count > target
    if rule.certified and not certified:
        if count > target:
            raise InvariantViolationError(
                f"found {count} distinct factors of length {n}, exceeding the "
                f"complexity target {target}; the word is outside the certified family"
            )
        raise SaturationError(
            f"scan of length {n} hit the position cap {cap} at {count} factors "
            f"(target {target})",
            n=n,
            partial=result,
            positions_scanned=positions_scanned,
        )
    return result


# ---------------------------------------------------------------------------
# Suffix-automaton index

class FactorIndex:
    """Index of all substrings of ``buffer[:region_len]``.

    Backed by a suffix automaton.  Each automaton state covers the
    substrings of one right-extension class, with lengths filling the
    interval (shortest-1, longest]; aggregating states by that interval
    yields per-length distinct counts, first-occurrence bounds, and
    right-extension degrees without ever materializing factor sets.
    """

    def __init__(self, buffer: WordBuffer, region_len: int):
        buffer.ensure(region_len)
        self.buffer = buffer
        self.region_len = region_len
        self.alphabet_size = buffer.alphabet_size
        self._build(buffer.symbols[:region_len], buffer.alphabet_size)
        self._aggregate()
        self._rs_end: np.ndarray | None = None  # lazy right-special table

    # -- construction ------------------------------------------------------

    def _build(self, data: bytes, m: int) -> None:
        link = [-1]
        length = [0]
        first_end = [0]
        trans = [-1] * m  # flat: trans[s * m + c]
        last = 0
        n_states = 1
        for pos, c in enumerate(data):
            cur = n_states
            n_states += 1
            length.append(length[last] + 1)
            link.append(-1)
            first_end.append(pos + 1)
            trans.extend([-1] * m)
            p = last
            while p != -1 and trans[p * m + c] == -1:
                trans[p * m + c] = cur
                p = link[p]
            if p == -1:
                link[cur] = 0
            else:
                q = trans[p * m + c]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = n_states
                    n_states += 1
                    length.append(length[p] + 1)
                    link.append(link[q])
                    # A clone's strings may occur earlier than the state it
                    # splits; the exact first end comes from propagation.
                    first_end.append(len(data) + 1)
                    trans.extend(trans[q * m : q * m + m])
                    while p != -1 and trans[p * m + c] == q:
                        trans[p * m + c] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur

        # First-occurrence ends: propagate minima up the suffix-link tree
        # (children have strictly greater ``length``, so a descending sweep
        # sees every child before its parent).
        order = sorted(range(n_states), key=length.__getitem__, reverse=True)
        for s in order:
            t = link[s]
            if t >= 0 and first_end[s] < first_end[t]:
                first_end[t] = first_end[s]

        self.n_states = n_states
        self._link = np.array(link, dtype=np.int64)
        self._len = np.array(length, dtype=np.int64)
        self._first_end = np.array(first_end, dtype=np.int64)
        self._trans = np.array(trans, dtype=np.int64).reshape(n_states, m)

    def _aggregate(self) -> None:
        R = self.region_len
        min_len = np.where(self._link >= 0, self._len[np.maximum(self._link, 0)] + 1, 0)

        # counts[n]: number of distinct substrings of length n in the region.
        diff = np.zeros(R + 2, dtype=np.int64)
        np.add.at(diff, min_len[1:], 1)  # skip the root (empty word)
        np.add.at(diff, self._len[1:] + 1, -1)
        self.counts = np.cumsum(diff)[: R + 1]
        self.counts[0] = 1

        # cover_end[n]: prefix length containing every length-n substring
        # of the region.  Within a state all lengths share one
        # first-occurrence end, and the true cover bound is non-decreasing
        # in n (every factor extends to the right), so a running maximum
        # over interval-opening values is exact away from the region end
        # and a sound overestimate there.
        new_max = np.zeros(R + 2, dtype=np.int64)
        np.maximum.at(new_max, min_len[1:], self._first_end[1:])
        self.cover_end = np.maximum.accumulate(new_max)[: R + 1]
        self.cover_end[0] = 0

        self._min_len = min_len
        self._outdeg = (self._trans >= 0).sum(axis=1)

        # Per-length counts of right-special substrings (>= 2 extensions)
        # and of fully-extendable ones (all m extensions).
        special = self._outdeg >= 2
        full = self._outdeg == self.alphabet_size
        d2 = np.zeros(R + 2, dtype=np.int64)
        d3 = np.zeros(R + 2, dtype=np.int64)
        np.add.at(d2, min_len[special], 1)
        np.add.at(d2, self._len[special] + 1, -1)
        np.add.at(d3, min_len[full], 1)
        np.add.at(d3, self._len[full] + 1, -1)
        self._special_count = np.cumsum(d2)[: R + 1]
        self._full_special_count = np.cumsum(d3)[: R + 1]

    # -- queries -----------------------------------------------------------

    def factor_count(self, n: int) -> int:
        """Distinct substrings of length n in the indexed region."""
        return int(self.counts[n])

    def certify(self, n: int, rule: SaturationRule = SaturationRule()) -> int:
        """Check the region saturates length n and return the window bound.

        Returns the last window start position that must be scanned so that
        every factor of length n is seen at least once.  Raises
        ``SaturationError`` if the distinct count misses the complexity
        target or the bound exceeds the position cap.
        """
        target = rule.resolved_target(self.alphabet_size, n)
        cap = rule.resolved_cap(n)
        if n > self.region_len or self.counts[n] != target:
            found = int(self.counts[n]) if n <= self.region_len else 0
            if found > target:
                raise InvariantViolationError(
                    f"region holds {found} distinct factors of length {n}, exceeding "
                    f"the complexity target {target}; the word is outside the certified family"
                )
            raise SaturationError(
                f"region of {self.region_len} symbols holds {found} factors of "
                f"length {n}, target {target}",
                n=n,
                positions_scanned=max(self.region_len - n + 1, 0),
            )
        bound = int(self.cover_end[n]) - n
        if bound > cap - 1:
            raise SaturationError(
                f"length {n} saturates only at window start {bound}, beyond the cap {cap}",
                n=n,
                positions_scanned=cap,
            )
        return bound

    def right_special_end(self, n: int) -> tuple[int, int]:
        """First-occurrence end and extension degree of the unique
        right-special factor of length n.

        The caller is responsible for having certified saturation at n and
        n + 1; uniqueness failure signals a scanner bug or a word outside
        the Arnoux-Rauzy family.
        """
        if n == 0:
            return 0, int(self._outdeg[0])
        if self._special_count[n] != 1:
            raise InvariantViolationError(
                f"expected exactly one right-special factor of length {n}, "
                f"found {int(self._special_count[n])}"
            )
        self._ensure_rs_table(n)
        end = int(self._rs_end[n])
        deg = int(self._rs_deg[n])
        return end, deg

    def _ensure_rs_table(self, n_max: int) -> None:
        if self._rs_end is not None and len(self._rs_end) > n_max:
            return
        size = min(self.region_len, max(2 * n_max, 1024)) + 1
        rs_end = np.zeros(size, dtype=np.int64)
        rs_deg = np.zeros(size, dtype=np.int64)
        special = np.flatnonzero(self._outdeg >= 2)
        for s in special:
            lo = int(self._min_len[s])
            hi = min(int(self._len[s]), size - 1)
            if lo > hi:
                continue
            lo = max(lo, 1)
            rs_end[lo : hi + 1] = self._first_end[s]
            rs_deg[lo : hi + 1] = self._outdeg[s]
        self._rs_end = rs_end
        self._rs_deg = rs_deg

    def walk(self, word) -> int | None:
        """Automaton state reached by reading ``word`` from the root, or
        None if the word is not a substring of the region."""
        s = 0
        for c in word:
            if c >= self.alphabet_size:
                return None
            s = int(self._trans[s, c])
            if s < 0:
                return None
        return s

    def contains(self, word) -> bool:
        return self.walk(word) is not None


def factor_index(buffer: WordBuffer, n_max: int,
                 rule: SaturationRule = SaturationRule()) -> FactorIndex:
    """Index covering every length up to n_max (with the extension margin
    needed for special-factor analysis at n_max).  Reuses a cached index on
    the buffer when one large enough exists."""
    cap = rule.resolved_cap(n_max + 1)
    region = cap + n_max + 1
    cached = buffer._index_cache
    if cached is not None and cached.region_len >= region:
        return cached
    index = FactorIndex(buffer, region)
    buffer._index_cache = index
    return index
