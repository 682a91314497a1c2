"""Right/left special factors and the Parikh-vector geometry they pin down.

A factor is right (left) special when at least two letters extend it on
the right (left) inside the word; the Tribonacci word has exactly one
right special factor of each length, extendable by all three letters.
Its Parikh vector (i, j, k) generates two distinguished vector triples
for each length n:

  central(n)  = {(i+1,j,k), (i,j+1,k), (i,j,k+1)}   -- always realized
  boundary(n) = {(i-1,j+1,k+1), (i+1,j-1,k+1), (i+1,j+1,k-1)}

The realized Parikh set at length n always contains central(n), and it
meets boundary(n) exactly when the abelian complexity exceeds 3.  All
realized vectors live in the twelve-point lattice neighborhood of
central(n), whose admissible regions (pairwise max-norm distance <= 2)
bound the abelian complexity by 7.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .abelian import ParikhSet, ParikhVector, parikh, parikh_set
from .errors import (
    InvalidInputError,
    InvariantViolationError,
    VerificationFailureError,
)
from .factors import SaturationRule, scan_distinct_factors
from .numeration import tribonacci_number
from .words import WordBuffer, apply_morphism

__all__ = [
    "SpecialFactorRecord",
    "right_special_factor",
    "bispecial_lengths",
    "CentralSet",
    "BoundarySet",
    "central_set",
    "boundary_set",
    "GeometryRegion",
    "GeometryClassification",
    "twelve_vector_geometry",
    "right_special_parikh",
    "is_min_complexity_length",
    "min_complexity_lengths",
    "successor_length",
    "EquivalenceRow",
    "verify_equivalences",
]


@dataclass
class SpecialFactorRecord:
    """The unique right special factor of one length, with extension data."""

    length: int
    word: bytes
    parikh: ParikhVector
    right_extensions: int
    left_extensions: int
    is_bispecial: bool


def right_special_factor(buffer: WordBuffer, length: int,
                         rule: SaturationRule = SaturationRule()) -> SpecialFactorRecord:
    """Find the unique right special factor of the given length by
    extension counting over the saturated factor set one longer.

    Grouping the certified set of (length+1)-factors by their length-long
    prefix counts right extensions; grouping by suffix counts left
    extensions.  Exactly one factor with at least two right extensions may
    exist, and it must be extendable by every letter; anything else
    signals a scanner bug or a word outside the certified family.
    """
    m = buffer.alphabet_size
    scan = scan_distinct_factors(buffer, length + 1, rule)
    sym = buffer.symbols
    right: dict[bytes, set[int]] = {}
    left: dict[bytes, set[int]] = {}
    for p in scan.first_positions:
        w = sym[p : p + length + 1]
        right.setdefault(w[:length], set()).add(w[-1])
        left.setdefault(w[1:], set()).add(w[0])
    specials = [w for w, exts in right.items() if len(exts) >= 2]
    if len(specials) != 1:
        raise InvariantViolationError(
            f"expected exactly one right special factor of length {length}, found {len(specials)}"
        )
    word = specials[0]
    if len(right[word]) != m:
        raise InvariantViolationError(
            f"right special factor of length {length} extends by {len(right[word])} letters, expected {m}"
        )
    left_ext = len(left.get(word, set()))
    return SpecialFactorRecord(
        length=length,
        word=word,
        parikh=parikh(word, m),
        right_extensions=len(right[word]),
        left_extensions=left_ext,
        is_bispecial=left_ext >= 2,
    )


def bispecial_lengths(max_len: int, buffer: WordBuffer | None = None) -> list[int]:
    """Lengths of the bispecial factors up to max_len, by the closed form
    (T_m + T_{m+2} - 3) / 2.

    With a buffer, each listed length is cross-checked against the
    extension-counted bispecial flag.
    """
    out: list[int] = []
    m = 0
    while True:
        v = (tribonacci_number(m) + tribonacci_number(m + 2) - 3) // 2
        if v > max_len:
            break
        out.append(v)
        m += 1
    if buffer is not None:
        for length in out:
            if not right_special_factor(buffer, length).is_bispecial:
                raise VerificationFailureError(
                    f"closed form lists {length} but the factor is not bispecial"
                )
    return out


@dataclass(frozen=True)
class CentralSet:
    """The three always-realized Parikh vectors at one length."""

    n: int
    vectors: tuple[ParikhVector, ParikhVector, ParikhVector]


@dataclass(frozen=True)
class BoundarySet:
    """The three Parikh vectors whose presence is equivalent to abelian
    complexity above 3.  Entries may be negative for tiny n; such vectors
    are simply never realized."""

    n: int
    vectors: tuple[ParikhVector, ParikhVector, ParikhVector]


def _central_vectors(base: ParikhVector) -> tuple[ParikhVector, ...]:
    i, j, k = base
    return ((i + 1, j, k), (i, j + 1, k), (i, j, k + 1))


def _boundary_vectors(base: ParikhVector) -> tuple[ParikhVector, ...]:
    i, j, k = base
    return ((i - 1, j + 1, k + 1), (i + 1, j - 1, k + 1), (i + 1, j + 1, k - 1))


def central_set(buffer: WordBuffer, n: int,
                rule: SaturationRule = SaturationRule(),
                pset: ParikhSet | None = None) -> CentralSet:
    """Central vector triple at length n, with the containment assertion
    that every one of the three is realized."""
    if n < 1:
        raise InvalidInputError(f"length must be >= 1, got {n}")
    record = right_special_factor(buffer, n - 1, rule)
    vectors = _central_vectors(record.parikh)
    realized = (pset or parikh_set(buffer, n, rule)).vectors
    for v in vectors:
        if v not in realized:
            raise InvariantViolationError(
                f"central vector {v} not realized among length-{n} factors"
            )
    return CentralSet(n, vectors)


def boundary_set(buffer: WordBuffer, n: int,
                 rule: SaturationRule = SaturationRule()) -> BoundarySet:
    if n < 1:
        raise InvalidInputError(f"length must be >= 1, got {n}")
    record = right_special_factor(buffer, n - 1, rule)
    return BoundarySet(n, _boundary_vectors(record.parikh))


# ---------------------------------------------------------------------------
# Twelve-vector neighborhood geometry

def _max_norm(u: ParikhVector, v: ParikhVector) -> int:
    return max(abs(a - b) for a, b in zip(u, v))


@dataclass(frozen=True)
class GeometryRegion:
    """One admissible region: a maximal set of pairwise max-norm-<=2
    vectors, shaped as a hexagon (7 points) or a triangle (6 points)."""

    kind: str  # "hexagon" or "triangle"
    anchor_letter: int
    vectors: frozenset[ParikhVector]


@dataclass
class GeometryClassification:
    """Outcome of classifying a realized Parikh set inside the neighborhood."""

    n: int
    base: ParikhVector
    neighborhood: tuple[ParikhVector, ...]
    regions: tuple[GeometryRegion, ...]
    containing: tuple[int, ...]
    clique_sizes: tuple[int, ...]
    extra_cliques: tuple[frozenset[ParikhVector], ...]


def _maximal_cliques(vectors: list[ParikhVector]) -> list[frozenset[ParikhVector]]:
    """All maximal subsets with pairwise max-norm distance <= 2, by bitmask
    enumeration (the vertex count is 12, so 4096 subsets)."""
    k = len(vectors)
    adj = []
    for a in range(k):
        mask = 0
        for b in range(k):
            if a != b and _max_norm(vectors[a], vectors[b]) <= 2:
                mask |= 1 << b
        adj.append(mask)
    valid = [False] * (1 << k)
    valid[0] = True
    for s in range(1, 1 << k):
        v = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        valid[s] = valid[rest] and (adj[v] & rest) == rest
    cliques = []
    for s in range(1, 1 << k):
        if not valid[s]:
            continue
        if any(not (s >> v) & 1 and (adj[v] & s) == s for v in range(k)):
            continue
        cliques.append(frozenset(vectors[v] for v in range(k) if (s >> v) & 1))
    return cliques


_CENTRAL_OFFSETS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@lru_cache(maxsize=None)
def _offset_structure(offsets: tuple[ParikhVector, ...]):
    """Region decomposition of a neighborhood given relative to its base
    point.  The structure is translation invariant, so it is computed once
    per distinct offset configuration.

    Returns (regions, extra_cliques, clique_sizes) where regions is a tuple
    of (kind, anchor_letter, offset_frozenset).  The hexagon anchored at
    letter c is the closed unit max-norm ball around the central offset
    incrementing c; the triangle anchored at c holds the offsets whose only
    negative coordinate can be c.  Each region must be a maximal
    pairwise-<=2 subset of the neighborhood.
    """
    regions = []
    for c in (0, 1, 2):
        ball = frozenset(v for v in offsets if _max_norm(v, _CENTRAL_OFFSETS[c]) <= 1)
        regions.append(("hexagon", c, ball))
    for c in (0, 1, 2):
        tri = frozenset(
            v for v in offsets if all(v[a] >= 0 for a in (0, 1, 2) if a != c)
        )
        regions.append(("triangle", c, tri))
    cliques = _maximal_cliques(list(offsets))
    clique_sets = set(cliques)
    for kind, c, members in regions:
        if members not in clique_sets:
            raise InvariantViolationError(
                f"{kind} region at letter {c} is not a maximal subset"
            )
    region_sets = {members for _, _, members in regions}
    extra = tuple(cl for cl in cliques if cl not in region_sets)
    sizes = tuple(sorted((len(cl) for cl in cliques), reverse=True))
    return tuple(regions), extra, sizes


def twelve_vector_geometry(buffer: WordBuffer, n: int,
                           rule: SaturationRule = SaturationRule(),
                           pset: ParikhSet | None = None,
                           base: ParikhVector | None = None) -> GeometryClassification:
    """Classify the realized Parikh set of length n inside its admissible
    neighborhood.

    Builds the twelve vectors with coordinate sum n lying within max-norm
    2 of every central vector, carves them into the three hexagons and
    three triangles (each verified to be a maximal pairwise-<=2 subset),
    and returns which of those regions contain the realized set.  The full
    maximal-subset enumeration is reported alongside: it finds one further
    maximal triangle, spanned by the three boundary vectors, which no
    realized set may need on its own -- if one does, an
    ``InvariantViolationError`` is raised.
    """
    if pset is None:
        pset = parikh_set(buffer, n, rule)
    if base is None:
        base = right_special_factor(buffer, n - 1, rule).parikh
    i, j, k = base
    offsets = []
    for d0 in range(-2, 3):
        for d1 in range(-2, 3):
            d = (d0, d1, 1 - d0 - d1)
            if all(_max_norm(d, c) <= 2 for c in _CENTRAL_OFFSETS):
                offsets.append(d)
    offsets = tuple(sorted(offsets))
    if len(offsets) != 12:
        raise InvariantViolationError(
            f"expected a twelve-vector neighborhood at n={n}, found {len(offsets)}"
        )

    def absolute(off: ParikhVector) -> ParikhVector:
        return (i + off[0], j + off[1], k + off[2])

    neighborhood = tuple(absolute(d) for d in offsets)
    if not set(pset.vectors) <= set(neighborhood):
        raise InvariantViolationError(
            f"realized Parikh set at n={n} escapes the twelve-vector neighborhood"
        )

    raw_regions, raw_extra, sizes = _offset_structure(offsets)
    regions = tuple(
        GeometryRegion(kind, c, frozenset(absolute(d) for d in members))
        for kind, c, members in raw_regions
    )
    extra = tuple(frozenset(absolute(d) for d in cl) for cl in raw_extra)
    containing = tuple(
        idx for idx, region in enumerate(regions) if pset.vectors <= region.vectors
    )
    if not containing:
        raise InvariantViolationError(
            f"realized Parikh set at n={n} fits no hexagon or triangle region"
        )
    return GeometryClassification(
        n=n,
        base=base,
        neighborhood=neighborhood,
        regions=regions,
        containing=containing,
        clique_sizes=sizes,
        extra_cliques=extra,
    )


def right_special_parikh(buffer: WordBuffer, index, length: int) -> ParikhVector:
    """Parikh vector of the unique right special factor, from a factor
    index (the bulk route; extension counting happens on automaton states).

    Requires the index region to saturate both ``length`` and
    ``length + 1`` so the state out-degrees reflect true extensions.
    """
    m = buffer.alphabet_size
    if length == 0:
        return (0,) * m
    index.certify(length)
    index.certify(length + 1)
    end, deg = index.right_special_end(length)
    if deg != m:
        raise InvariantViolationError(
            f"right special factor of length {length} extends by {deg} letters, expected {m}"
        )
    pc = buffer.prefix_counts
    return tuple(int(x) for x in pc[:, end] - pc[:, end - length])


# ---------------------------------------------------------------------------
# Lengths of minimal abelian complexity

def is_min_complexity_length(n: int) -> bool:
    """Closed-form membership: n = 1 or n = (T_m + T_{m+2} - 1) / 2."""
    if n < 1:
        raise InvalidInputError(f"length must be >= 1, got {n}")
    if n == 1:
        return True
    m = 0
    while True:
        v = (tribonacci_number(m) + tribonacci_number(m + 2) - 1) // 2
        if v == n:
            return True
        if v > n:
            return False
        m += 1


def min_complexity_lengths(max_len: int) -> list[int]:
    """All lengths up to max_len with minimal (= 3) abelian complexity."""
    out = [1] if max_len >= 1 else []
    m = 0
    while True:
        v = (tribonacci_number(m) + tribonacci_number(m + 2) - 1) // 2
        if v > max_len:
            break
        if v not in out:
            out.append(v)
        m += 1
    return sorted(out)


def successor_length(buffer: WordBuffer, n: int,
                     rule: SaturationRule = SaturationRule()) -> int:
    """Length propagation map of the substitution.

    The image of the right special factor of length n-1, extended by 0, is
    again right special; this returns that factor's length plus one, i.e.
    the length whose special-factor analysis the substitution maps n to.
    Satisfies successor_length(n) = n + i + j + 1 for the special factor's
    Parikh vector (i, j, k).
    """
    record = right_special_factor(buffer, n - 1, rule)
    image = apply_morphism(buffer.morphism, record.word) + b"\x00"
    value = len(image) + 1
    i, j, _ = record.parikh
    if value != n + i + j + 1:
        raise InvariantViolationError(
            f"successor length of {n} is {value}, expected {n + i + j + 1}"
        )
    return value


# ---------------------------------------------------------------------------
# Five-way characterization

@dataclass
class EquivalenceRow:
    """Truth values of the five equivalent predicates at one length."""

    n: int
    one_balanced: bool
    complexity_is_min: bool
    boundary_disjoint: bool
    bispecial_exists: bool
    closed_form: bool

    def all_agree(self) -> bool:
        return len({self.one_balanced, self.complexity_is_min,
                    self.boundary_disjoint, self.bispecial_exists,
                    self.closed_form}) == 1


def verify_equivalences(buffer: WordBuffer, n_max: int,
                        rule: SaturationRule = SaturationRule()) -> list[EquivalenceRow]:
    """Check, for every n up to n_max, that the five characterizations of
    minimal abelian complexity agree; raises ``VerificationFailureError``
    naming the first disagreeing length."""
    rows = []
    for n in range(1, n_max + 1):
        record = right_special_factor(buffer, n - 1, rule)
        pset = parikh_set(buffer, n, rule)
        coords = list(zip(*pset.vectors))
        one_balanced = all(max(c) - min(c) <= 1 for c in coords)
        row = EquivalenceRow(
            n=n,
            one_balanced=one_balanced,
            complexity_is_min=len(pset.vectors) == 3,
            boundary_disjoint=not (
                set(_boundary_vectors(record.parikh)) & pset.vectors
            ),
            bispecial_exists=record.is_bispecial,
            closed_form=is_min_complexity_length(n),
        )
        if not row.all_agree():
            raise VerificationFailureError(
                f"five-way characterization disagrees at n={n}: {row}"
            )
        rows.append(row)
    return rows
