"""Generation of prefixes of fixed points of substitutions.

Words are sequences of small integer symbols (one byte each), held as
``bytes``.  The buffer of a fixed point is grown by applying the morphism
to the whole current content and truncating, which preserves the prefix
property: the image of a prefix of the fixed point is again a prefix.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    BufferLimitError,
    ConfigurationError,
    InvalidInputError,
    RangeError,
)

Symbol = int
Word = bytes
WordLike = Union[bytes, bytearray, str, Sequence[int]]

#: Default hard cap on materialized symbols (2**27).
DEFAULT_MAX_SYMBOLS = 1 << 27

_MAX_ALPHABET = 256  # one byte per symbol


def as_word(w: WordLike) -> bytes:
    """Normalize a word given as bytes, a digit string, or an int sequence."""
    if isinstance(w, bytes):
        return w
    if isinstance(w, bytearray):
        return bytes(w)
    if isinstance(w, str):
        try:
            return bytes(int(c) for c in w)
        except ValueError:
            raise InvalidInputError(f"word text must be decimal digits, got {w!r}") from None
    return bytes(w)


def word_to_text(w: WordLike) -> str:
    """ASCII digit form, one digit per symbol, no separators."""
    return "".join(str(c) for c in as_word(w))


class Morphism:
    """Map from each symbol of an alphabet {0..m-1} to a finite word over it."""

    __slots__ = ("alphabet_size", "images")

    def __init__(self, images: Iterable[WordLike]):
        images = tuple(as_word(im) for im in images)
        m = len(images)
        if m < 2:
            raise InvalidInputError(f"alphabet must have at least 2 letters, got {m}")
        if m > _MAX_ALPHABET:
            raise InvalidInputError(f"alphabet size {m} exceeds byte storage ({_MAX_ALPHABET})")
        for a, im in enumerate(images):
            if any(c >= m for c in im):
                raise InvalidInputError(f"image of {a} uses symbols outside the {m}-letter alphabet")
        self.alphabet_size = m
        self.images = images

    def __repr__(self) -> str:
        ims = ", ".join(f"{a}->{word_to_text(im)}" for a, im in enumerate(self.images))
        return f"Morphism({ims})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Morphism) and self.images == other.images

    def is_prolongable_at(self, seed: Symbol) -> bool:
        """The image of seed begins with seed and has length >= 2, so the
        iterates converge to an infinite fixed point."""
        if not 0 <= seed < self.alphabet_size:
            return False
        im = self.images[seed]
        return len(im) >= 2 and im[0] == seed


def apply_morphism(morphism: Morphism, w: WordLike) -> bytes:
    """Concatenation of the images of the symbols of w, in order."""
    w = as_word(w)
    if any(c >= morphism.alphabet_size for c in w):
        raise InvalidInputError("word uses symbols outside the morphism's alphabet")
    return b"".join(morphism.images[c] for c in w)


def mbonacci_morphism(m: int) -> Morphism:
    """The order-m generalization of the Fibonacci/Tribonacci morphism:
    i maps to the two-letter word 0,(i+1) for i < m-1, and m-1 maps to 0."""
    if m < 2:
        raise InvalidInputError(f"m-bonacci morphism needs m >= 2, got {m}")
    if m > _MAX_ALPHABET:
        raise InvalidInputError(f"alphabet size {m} exceeds byte storage ({_MAX_ALPHABET})")
    images = [bytes((0, i + 1)) for i in range(m - 1)]
    images.append(bytes((0,)))
    return Morphism(images)


def tribonacci_morphism() -> Morphism:
    """0 -> 01, 1 -> 02, 2 -> 0."""
    return mbonacci_morphism(3)


def incidence_matrix(morphism: Morphism) -> np.ndarray:
    """m x m matrix whose (i, j) entry counts the letter i in the image of j.

    Column j therefore sums to the length of the image of j, and Parikh
    vectors transform linearly: parikh(image of w) = matrix @ parikh(w).
    """
    m = morphism.alphabet_size
    mat = np.zeros((m, m), dtype=np.int64)
    for j, im in enumerate(morphism.images):
        for i in range(m):
            mat[i, j] = im.count(i)
    return mat


class WordBuffer:
    """Materialized prefix of the fixed point of a morphism.

    The symbol store is an immutable ``bytes`` object that is replaced
    wholesale by ``ensure``; readers holding views of the old content are
    never invalidated.  Growth is single-writer: the caller must not let
    other threads read while a growth call is in flight.  Per-letter prefix
    counts are kept for every position so any window's letter counts are
    two array lookups.
    """

    def __init__(self, morphism: Morphism, seed: Symbol,
                 max_symbols: int = DEFAULT_MAX_SYMBOLS):
        if not 0 <= seed < morphism.alphabet_size:
            raise InvalidInputError(f"seed {seed} outside alphabet of size {morphism.alphabet_size}")
        if not morphism.is_prolongable_at(seed):
            raise ConfigurationError(
                f"morphism is not prolongable at {seed}: image must start with the seed and have length >= 2"
            )
        self.morphism = morphism
        self.seed = seed
        self.max_symbols = max_symbols
        self._symbols: bytes = bytes((seed,))
        self._prefix_counts: np.ndarray | None = None
        self._index_cache = None  # largest FactorIndex built over this buffer

    def __len__(self) -> int:
        return len(self._symbols)

    def __getitem__(self, i: int) -> Symbol:
        return self._symbols[i]

    @property
    def alphabet_size(self) -> int:
        return self.morphism.alphabet_size

    @property
    def symbols(self) -> bytes:
        return self._symbols

    def ensure(self, min_len: int) -> "WordBuffer":
        """Grow the buffer to at least min_len symbols (no-op if long enough).

        Growth applies the morphism to the whole current content until the
        requested length is reached, then truncates; the image of a prefix
        of the fixed point is again a prefix, so regrowing later is sound.
        """
        if min_len > self.max_symbols:
            raise BufferLimitError(
                f"requested {min_len} symbols exceeds the configured cap of {self.max_symbols}"
            )
        if min_len <= len(self._symbols):
            return self
        w = self._symbols
        while len(w) < min_len:
            grown = apply_morphism(self.morphism, w)
            if len(grown) <= len(w):
                raise ConfigurationError("morphism does not grow the buffer; cannot reach requested length")
            w = grown
        self._symbols = w[:min_len]
        self._prefix_counts = None
        return self

    @property
    def prefix_counts(self) -> np.ndarray:
        """Array of shape (alphabet_size, len + 1); entry [a, N] counts the
        letter a among the first N symbols."""
        if self._prefix_counts is None or self._prefix_counts.shape[1] != len(self._symbols) + 1:
            data = np.frombuffer(self._symbols, dtype=np.uint8)
            m = self.alphabet_size
            pc = np.zeros((m, len(data) + 1), dtype=np.int64)
            for a in range(m):
                np.cumsum(data == a, out=pc[a, 1:])
            self._prefix_counts = pc
        return self._prefix_counts

    def slice(self, start: int, length: int) -> bytes:
        """The factor occurring at position start (the buffer is not grown)."""
        if start < 0 or length < 0 or start + length > len(self._symbols):
            raise RangeError(
                f"window [{start}, {start + length}) outside buffer of length {len(self._symbols)}"
            )
        return self._symbols[start : start + length]


def fixed_point_prefix(morphism: Morphism, seed: Symbol, min_len: int,
                       max_symbols: int = DEFAULT_MAX_SYMBOLS) -> WordBuffer:
    """Buffer holding at least min_len symbols of the fixed point of the
    morphism at the given seed."""
    if min_len < 1:
        raise InvalidInputError(f"prefix length must be >= 1, got {min_len}")
    return WordBuffer(morphism, seed, max_symbols=max_symbols).ensure(min_len)


def tribonacci_word(min_len: int = 1, max_symbols: int = DEFAULT_MAX_SYMBOLS) -> WordBuffer:
    """Prefix buffer of the Tribonacci word 0102010010201..."""
    return fixed_point_prefix(tribonacci_morphism(), 0, min_len, max_symbols=max_symbols)


def mbonacci_word(m: int, min_len: int = 1, max_symbols: int = DEFAULT_MAX_SYMBOLS) -> WordBuffer:
    """Prefix buffer of the m-bonacci word."""
    return fixed_point_prefix(mbonacci_morphism(m), 0, min_len, max_symbols=max_symbols)
