"""Base-q digit expansions, stored least-significant digit first."""
from __future__ import annotations

from dataclasses import dataclass


class InvalidBaseError(ValueError):
    pass


class InvalidDigitError(ValueError):
    pass


def _check_base(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {q!r}")


@dataclass(frozen=True)
class DigitWord:
    """A base-``base`` digit string; ``digits[0]`` is the least significant."""

    base: int
    digits: tuple[int, ...] = ()

    def __post_init__(self):
        _check_base(self.base)
        object.__setattr__(self, "digits", tuple(self.digits))
        for e in self.digits:
            if not 0 <= e < self.base:
                raise InvalidDigitError(f"digit {e} out of range for base {self.base}")

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    @property
    def is_proper(self) -> bool:
        return not self.digits or self.digits[-1] != 0

    def reversed(self) -> DigitWord:
        return DigitWord(self.base, self.digits[::-1])

    def __add__(self, other: DigitWord) -> DigitWord:
        if other.base != self.base:
            raise InvalidBaseError("cannot concatenate words of different bases")
        return DigitWord(self.base, self.digits + other.digits)


def to_digits(n: int, q: int) -> DigitWord:
    _check_base(q)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    out = []
    while n:
        n, e = divmod(n, q)
        out.append(e)
    return DigitWord(q, tuple(out))


def from_digits(w: DigitWord | list[int] | tuple[int, ...], q: int | None = None) -> int:
    if not isinstance(w, DigitWord):
        if q is None:
            raise InvalidBaseError("a base is required for a bare digit list")
        w = DigitWord(q, tuple(w))
    n = 0
    for e in reversed(w.digits):
        n = n * w.base + e
    return n


def reverse(n: int, q: int) -> int:
    """Reverse the proper base-q expansion of n.  ``reverse(0, q) == 0``.

    Trailing zeros of n become leading zeros and are dropped, so this is only
    an involution on n not divisible by q.
    """
    _check_base(q)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    r = 0
    while n:
        n, e = divmod(n, q)
        r = r * q + e
    return r


def digit_sum(n: int, q: int) -> int:
    _check_base(q)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    s = 0
    while n:
        n, e = divmod(n, q)
        s += e
    return s
