"""Rank-2 linear representations of q-regular sequences.

A representation is a base ``q``, digit matrices ``A(0..q-1)`` and a seed
``(alpha, beta)``.  The value at n is

    x_n = (1, 0) A(e_0) A(e_1) ... A(e_{v-1}) (alpha, beta)^T

where ``e_0`` is the least significant digit of n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .digits import DigitWord, InvalidBaseError, InvalidDigitError
from .rings import Mat2, Vec2


@dataclass(frozen=True)
class LinearRep:
    base: int
    matrices: tuple[Mat2, ...]
    seed: Vec2
    name: str = field(default="", compare=False)
    _rows: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 2:
            raise InvalidBaseError(f"base must be an integer >= 2, got {self.base!r}")
        mats = tuple(self.matrices)
        if len(mats) != self.base:
            raise ValueError(f"need exactly {self.base} digit matrices, got {len(mats)}")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "_rows", tuple(m.entries() for m in mats))

    @property
    def alpha(self):
        return self.seed.v1

    @property
    def beta(self):
        return self.seed.v2

    def matrix(self, e: int) -> Mat2:
        return self.matrices[e]

    def eval_pair(self, n: int) -> Vec2:
        """(x_n, x_{n+1}) via v(qm + e) = A(e) v(m), v(0) = (alpha, beta)."""
        return Vec2(*self._pair(n))

    def _pair(self, n: int) -> tuple[Any, Any]:
        if n < 0:
            raise ValueError(f"index must be nonnegative, got {n}")
        q = self.base
        digits = []
        while n:
            n, e = divmod(n, q)
            digits.append(e)
        v1, v2 = self.seed.v1, self.seed.v2
        rows = self._rows
        for e in reversed(digits):
            a1, a2, a3, a4 = rows[e]
            v1, v2 = a1 * v1 + a2 * v2, a3 * v1 + a4 * v2
        return v1, v2

    def eval(self, n: int):
        return self._pair(n)[0]

    __call__ = eval

    def word_product(self, w: DigitWord | Sequence[int]) -> Mat2:
        """A(w[0]) A(w[1]) ... A(w[-1]); identity for the empty word."""
        digits = self._digits_of(w)
        if not digits:
            return Mat2.identity(self.alpha)
        prod = self.matrices[digits[0]]
        for e in digits[1:]:
            prod = prod @ self.matrices[e]
        return prod

    def word_value(self, w: DigitWord | Sequence[int]):
        """(1, 0) P(w) (alpha, beta)^T, computed as a literal matrix word."""
        p = self.word_product(w)
        return p.m11 * self.alpha + p.m12 * self.beta

    def _digits_of(self, w) -> tuple[int, ...]:
        if isinstance(w, DigitWord):
            if w.base != self.base:
                raise InvalidBaseError(f"word in base {w.base}, representation in base {self.base}")
            return w.digits
        digits = tuple(w)
        for e in digits:
            if not 0 <= e < self.base:
                raise InvalidDigitError(f"digit {e} out of range for base {self.base}")
        return digits


def eval_pair(rep: LinearRep, n: int) -> Vec2:
    return rep.eval_pair(n)


def word_value(rep: LinearRep, w: DigitWord | Sequence[int]):
    return rep.word_value(w)


def recurrence_oracle(rep: LinearRep, N: int) -> list:
    """x_0 .. x_{N-1} bottom-up from memoized pairs; no matrix words.

    pair[n] = A(n mod q) applied to pair[n // q]; x_n is pair[n][0].
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    q = rep.base
    pairs: list = [(rep.alpha, rep.beta)]
    for n in range(1, N):
        m, e = divmod(n, q)
        u, v = pairs[m]
        A = rep.matrices[e]
        pairs.append((A.m11 * u + A.m12 * v, A.m21 * u + A.m22 * v))
    return [p[0] for p in pairs]
