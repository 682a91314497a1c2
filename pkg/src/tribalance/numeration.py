"""Tribonacci numbers and the Zeckendorf-style numeration they induce.

The sequence is 1, 2, 4, 7, 13, 24, ... (each term the sum of the previous
three).  Every natural number N has a unique expansion N = sum(p_k * T_k)
with binary digits p_k subject to the rule that two consecutive 1-digits
force a 0 two places below: p_k = p_{k-1} = 1 implies p_{k-2} = 0.
Digits are stored least-significant first throughout.
"""

from __future__ import annotations

from bisect import bisect_right

from .errors import InvalidInputError, InvalidRepresentationError

# Shared, append-only cache of 1, 2, 4, 7, 13, ...  Safe under a
# single-writer / multi-reader discipline: entries are only appended.
_TRIBO_CACHE: list[int] = [1, 2, 4]


def _extend_cache(limit_index: int | None = None, limit_value: int | None = None) -> None:
    t = _TRIBO_CACHE
    while (limit_index is not None and len(t) <= limit_index) or (
        limit_value is not None and t[-1] < limit_value
    ):
        t.append(t[-1] + t[-2] + t[-3])


def tribonacci_number(k: int) -> int:
    """k-th generalized-Fibonacci number of order 3 (1, 2, 4, 7, 13, ...).

    Equals the length of the k-th iterate of the Tribonacci morphism on "0".
    """
    if k < 0:
        raise InvalidInputError(f"index must be non-negative, got {k}")
    _extend_cache(limit_index=k)
    return _TRIBO_CACHE[k]


def tribonacci_numbers_upto(value: int) -> list[int]:
    """All sequence terms <= value, in increasing order."""
    if value < 1:
        return []
    _extend_cache(limit_value=value + 1)
    return _TRIBO_CACHE[: bisect_right(_TRIBO_CACHE, value)]


class ZeckendorfRep:
    """Digit sequence of the Tribonacci numeration of one integer.

    ``digits[k]`` is the coefficient of T_k, least significant first.  The
    canonical form has no trailing zeros (empty for N = 0).
    """

    __slots__ = ("digits",)

    def __init__(self, digits: list[int]):
        if not is_valid_rep(digits):
            raise InvalidRepresentationError(f"digit string violates the numeration constraint: {digits}")
        self.digits = list(digits)

    def __eq__(self, other) -> bool:
        return isinstance(other, ZeckendorfRep) and self.digits == other.digits

    def __repr__(self) -> str:
        return f"ZeckendorfRep({self.digits})"

    def __str__(self) -> str:
        return "".join(str(d) for d in self.digits)

    def value(self) -> int:
        return zeckendorf_decode(self)

    @classmethod
    def from_text(cls, text: str) -> "ZeckendorfRep":
        if not all(c in "01" for c in text):
            raise InvalidRepresentationError(f"digit text must be 0/1, got {text!r}")
        return cls([int(c) for c in text])


def is_valid_rep(digits) -> bool:
    """True iff the digit string satisfies the numeration constraint.

    Digits must be bits, and whenever p_k = p_{k-1} = 1 the next lower
    digit p_{k-2} must be 0 (no run of three consecutive ones).
    """
    digits = list(digits)
    if any(d not in (0, 1) for d in digits):
        return False
    for k in range(2, len(digits)):
        if digits[k] == 1 and digits[k - 1] == 1 and digits[k - 2] == 1:
            return False
    return True


def zeckendorf_encode(n: int) -> ZeckendorfRep:
    """Greedy expansion of n >= 0: repeatedly subtract the largest term <= remainder."""
    if n < 0:
        raise InvalidInputError(f"cannot encode negative integer {n}")
    if n == 0:
        return ZeckendorfRep([])
    terms = tribonacci_numbers_upto(n)
    digits = [0] * len(terms)
    remainder = n
    k = len(terms) - 1
    while remainder > 0:
        k = bisect_right(terms, remainder, 0, k + 1) - 1
        digits[k] = 1
        remainder -= terms[k]
    return ZeckendorfRep(digits)


def zeckendorf_decode(rep) -> int:
    """Weighted sum of the digits against the Tribonacci terms.

    Accepts a ``ZeckendorfRep`` or a raw digit sequence; raw digits are
    validated and rejected with ``InvalidRepresentationError`` on violation.
    """
    digits = rep.digits if isinstance(rep, ZeckendorfRep) else list(rep)
    if not is_valid_rep(digits):
        raise InvalidRepresentationError(f"digit string violates the numeration constraint: {digits}")
    if not digits:
        return 0
    _extend_cache(limit_index=len(digits) - 1)
    return sum(t for d, t in zip(digits, _TRIBO_CACHE) if d)
