"""Concrete sequences: Northshield's base-3 analogue of Stern's sequence and
its two-parameter family, Stern numbers and polynomials, digit-sum
correlations, plus the continued-fraction, symmetry and growth probes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np

from .certificate import Certificate
from .digits import InvalidBaseError
from .linrep import LinearRep
from .rings import (BiPoly, ComplexApprox, Mat2, QuadExt, Vec2, adjoin_sqrt, field_inv,
                    is_zero)

HALF = Fraction(1, 2)
SQRT2 = QuadExt(2, 0, 1)


class ExcludedParameterError(ValueError):
    pass


class DegenerateThetaError(ValueError):
    pass


# --------------------------------------------------------------------------
# Northshield / two-parameter family
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ParametricFamily:
    """a_0 = 0, a_1 = 1, a_3n = a_n, a_3n+1 = tau a_n + a_n+1,
    a_3n+2 = omega a_n + sigma a_n+1 with omega = 1 - sigma^2 + tau sigma."""

    tau: Any
    sigma: Any

    @property
    def omega(self):
        return 1 - self.sigma * self.sigma + self.tau * self.sigma

    def rep(self) -> LinearRep:
        return parametric_rep(self.tau, self.sigma)

    def certificate(self) -> Certificate:
        return parametric_certificate(self.tau, self.sigma)


def parametric_rep(tau, sigma, name: str = "parametric") -> LinearRep:
    omega = ParametricFamily(tau, sigma).omega
    return LinearRep(
        3,
        (Mat2(1, 0, tau, 1), Mat2(tau, 1, omega, sigma), Mat2(omega, sigma, 0, 1)),
        Vec2(0, 1),
        name=name,
    )


def parametric_certificate(tau, sigma) -> Certificate:
    diff = sigma - tau
    return Certificate(1, 1, (diff - 1) * HALF, (diff + 1) * HALF)


def northshield_rep() -> LinearRep:
    return parametric_rep(SQRT2, SQRT2, name="northshield")


def northshield_certificate() -> Certificate:
    return parametric_certificate(SQRT2, SQRT2)


def symbolic_parametric() -> tuple[LinearRep, Certificate]:
    """The family with tau, sigma as polynomial indeterminates."""
    tau, sigma = BiPoly.gens(("tau", "sigma"))
    return parametric_rep(tau, sigma, name="parametric-symbolic"), parametric_certificate(tau, sigma)


# --------------------------------------------------------------------------
# Stern numbers and polynomials
# --------------------------------------------------------------------------

def _invert(x):
    if isinstance(x, BiPoly):
        return x.monomial_inverse()
    return field_inv(x)


def stern_rep(x, y, name: str = "stern") -> LinearRep:
    """z_1 = 1, z_2n = z_n, z_2n+1 = x z_n + y z_n+1 as a base-2 representation.

    The seed's first entry is (1 - y)/x; for polynomial x this is a Laurent
    polynomial, which cancels out of every value at n >= 1.
    """
    if is_zero(x):
        raise ExcludedParameterError("x = 0 is not supported")
    alpha = (1 - y) * _invert(x)
    return LinearRep(2, (Mat2(1, 0, x, y), Mat2(x, y, 0, 1)), Vec2(alpha, 1), name=name)


def stern_numeric_rep() -> LinearRep:
    return stern_rep(1, 1, name="stern-numeric")


def stern_poly_rep() -> LinearRep:
    x, y = BiPoly.gens()
    return stern_rep(x, y, name="stern-poly")


def stern_certificate(x, y) -> Certificate:
    """S = [[g, 1], [-1/2, 1/(2g)]] with 4 g^2 = (y/x)(1-y)/(1-x)."""
    x, y = Fraction(x), Fraction(y)
    if x in (0, 1) or y in (0, 1):
        raise ExcludedParameterError(f"x and y must avoid 0 and 1, got x={x}, y={y}")
    g = adjoin_sqrt((y / x) * (1 - y) / (1 - x)).root * HALF
    return Certificate(g, 1, -HALF, field_inv(2 * g))


@lru_cache(maxsize=None)
def stern_number(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < 2:
        return n
    m, odd = divmod(n, 2)
    if odd:
        return stern_number(m) + stern_number(m + 1)
    return stern_number(m)


@lru_cache(maxsize=None)
def stern_poly(n: int) -> BiPoly:
    if n < 1:
        raise ValueError("Stern polynomials are defined for n >= 1")
    if n == 1:
        return BiPoly.const(1)
    m, odd = divmod(n, 2)
    if odd:
        x, y = BiPoly.gens()
        return x * stern_poly(m) + y * stern_poly(m + 1)
    return stern_poly(m)


# --------------------------------------------------------------------------
# digit-sum correlations
# --------------------------------------------------------------------------

def e(x: float) -> ComplexApprox:
    return ComplexApprox.unit(x)


def _gamma_one(q: int, theta: float) -> ComplexApprox:
    den = q * e(-theta) - e(-theta * q)
    if abs(den) < 1e-12:
        raise DegenerateThetaError(f"gamma_1 is undefined at q={q}, theta={theta}")
    return (q - 1) / den


def gamma_rep(q: int, theta: float) -> LinearRep:
    if not isinstance(q, int) or q < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {q!r}")
    mats = []
    for k in range(q):
        mats.append(Mat2((q - k) / q * e(theta * k),
                         k / q * e(-theta * (q - k)),
                         (q - k - 1) / q * e(theta * (k + 1)),
                         (k + 1) / q * e(-theta * (q - k - 1))))
    return LinearRep(q, tuple(mats), Vec2(ComplexApprox(1.0), _gamma_one(q, theta)),
                     name=f"gamma(q={q}, theta={theta!r})")


def gamma_certificate(q: int, theta: float) -> Certificate:
    one = ComplexApprox(1.0)
    return Certificate(one, _gamma_one(q, theta).conjugate(), ComplexApprox(0.0), one)


@lru_cache(maxsize=4)
def _digit_sum_table(limit: int, q: int) -> np.ndarray:
    n = np.arange(limit, dtype=np.int64)
    s = np.zeros(limit, dtype=np.int64)
    while n.any():
        s += n % q
        n //= q
    s.flags.writeable = False
    return s


def _digit_sums(limit: int, q: int) -> np.ndarray:
    # pad so nearby limits share one cached table
    padded = -(-limit // 65536) * 65536
    return _digit_sum_table(padded, q)[:limit]


def gamma_empirical(q: int, theta: float, t: int, N: int) -> ComplexApprox:
    """(1/N) sum_{n<N} e(theta (s_q(n+t) - s_q(n)))."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if t == 0 or theta == 0:
        return ComplexApprox(1.0)
    s = _digit_sums(N + t, q)
    diff = (s[t:t + N] - s[:N]).astype(np.float64)
    z = np.exp(2j * np.pi * theta * diff).mean()
    return ComplexApprox(float(z.real), float(z.imag))


# --------------------------------------------------------------------------
# continued fractions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RunLengths:
    """Alternating 1-run / 0-run lengths of a binary expansion, leading run first."""

    runs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "runs", tuple(self.runs))
        if not self.runs:
            raise ValueError("run list must be nonempty")
        if any(not isinstance(k, int) or k < 1 for k in self.runs):
            raise ValueError(f"run lengths must be positive integers: {self.runs}")

    def to_int(self) -> int:
        """The odd integer (1^k0 0^k1 ... 1^kr)_2; needs an odd number of runs."""
        if len(self.runs) % 2 == 0:
            raise ValueError("an odd integer needs an odd number of runs")
        bits = "".join(("1" if i % 2 == 0 else "0") * k for i, k in enumerate(self.runs))
        return int(bits, 2)

    def reversed(self) -> RunLengths:
        return RunLengths(self.runs[::-1])


def binary_runs(n: int) -> RunLengths:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"binary_runs needs an odd positive integer, got {n}")
    bits = bin(n)[2:]
    runs = []
    prev, count = bits[0], 0
    for b in bits:
        if b == prev:
            count += 1
        else:
            runs.append(count)
            prev, count = b, 1
    runs.append(count)
    return RunLengths(tuple(runs))


def cf_numerator(runs: RunLengths | tuple[int, ...] | list[int]) -> int:
    """Numerator of [k0; k1, ..., kr] via p_i = k_i p_{i-1} + p_{i-2}."""
    if not isinstance(runs, RunLengths):
        runs = RunLengths(tuple(runs))
    p_prev, p = 0, 1
    for k in runs.runs:
        p_prev, p = p, k * p + p_prev
    return p


def reversed_cf_same_numerator(runs: RunLengths | tuple[int, ...] | list[int]) -> bool:
    if not isinstance(runs, RunLengths):
        runs = RunLengths(tuple(runs))
    return cf_numerator(runs) == cf_numerator(runs.reversed())


# --------------------------------------------------------------------------
# Northshield symmetry and growth
# --------------------------------------------------------------------------

def northshield_symmetry(k: int, rep: LinearRep | None = None) -> int | None:
    """First 0 <= m <= 3^k with b(3^k + m) != b(3^(k+1) - m), or None."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rep = rep or northshield_rep()
    lo, hi = 3 ** k, 3 ** (k + 1)
    for m in range(lo + 1):
        if rep.eval(lo + m) != rep.eval(hi - m):
            return m
    return None


GROWTH_EXPONENT = math.log(1 + math.sqrt(2), 3)


def growth_ratio(n: int, rat: int, irr: int) -> float:
    """2 b_n / (2n)^log_3(1 + sqrt 2) for b_n = rat + irr sqrt 2."""
    b = rat + irr * math.sqrt(2)
    return 2 * b / (2 * n) ** GROWTH_EXPONENT


@dataclass(frozen=True)
class GrowthBlock:
    k: int
    max_ratio: float
    argmax: int

    def to_json(self) -> dict:
        return {"k": self.k, "max": self.max_ratio, "argmax": self.argmax}


@dataclass(frozen=True)
class GrowthReport:
    exponent: float
    blocks: tuple[GrowthBlock, ...]

    @property
    def maxima(self) -> list[float]:
        return [b.max_ratio for b in self.blocks]

    def to_json(self) -> dict:
        return {"exponent": self.exponent, "blocks": [b.to_json() for b in self.blocks]}


def northshield_table(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer coordinates (rat, irr) of b_n = rat + irr sqrt 2 for n < limit."""
    size = 3
    while size < limit:
        size *= 3
    R = np.zeros(size + 1, dtype=np.int64)
    I = np.zeros(size + 1, dtype=np.int64)
    R[1] = 1
    I[2] = 1
    lo = 1
    while 3 * lo <= size:
        m = np.arange(lo, 3 * lo)
        r0, i0 = R[m], I[m]
        n = 3 * m
        ok = n <= size
        R[n[ok]], I[n[ok]] = r0[ok], i0[ok]
        # b_{m+1} with m + 1 = 3 lo was just filled in above
        r1, i1 = R[m + 1], I[m + 1]
        # sqrt2 * (r + i sqrt2) = 2i + r sqrt2
        ok = n + 1 <= size
        R[n[ok] + 1], I[n[ok] + 1] = (2 * i0 + r1)[ok], (r0 + i1)[ok]
        ok = n + 2 <= size
        R[n[ok] + 2], I[n[ok] + 2] = (r0 + 2 * i1)[ok], (i0 + r1)[ok]
        lo *= 3
    return R[:limit], I[:limit]


def growth_blocks(k_max: int) -> GrowthReport:
    """Per-block maxima of 2 b_n / (2n)^log_3(1+sqrt2) over [3^k, 3^(k+1)), k = 2..k_max."""
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    R, I = northshield_table(3 ** (k_max + 1))
    sqrt2 = math.sqrt(2)
    blocks = []
    for k in range(2, k_max + 1):
        lo, hi = 3 ** k, 3 ** (k + 1)
        n = np.arange(lo, hi, dtype=np.float64)
        vals = 2 * (R[lo:hi] + I[lo:hi] * sqrt2) / (2 * n) ** GROWTH_EXPONENT
        j = int(np.argmax(vals))
        arg = lo + j
        # scalar recomputation keeps the reported value independent of numpy's pow
        blocks.append(GrowthBlock(k, growth_ratio(arg, int(R[arg]), int(I[arg])), arg))
    return GrowthReport(GROWTH_EXPONENT, tuple(blocks))
