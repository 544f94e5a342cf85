"""Coefficient domains: rationals, quadratic extensions, two-variable
(Laurent) polynomials and tolerance-compared complex floats, plus 2x2
matrices and vectors over any of them.

Rationals are plain ``int``/``fractions.Fraction`` values; integral
fractions are collapsed to ``int`` so that the common integer case stays on
the fast path.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

Rational = Union[int, Fraction]


class DomainMismatchError(TypeError):
    """Operands live in different coefficient domains."""


class UnsupportedOperationError(TypeError):
    pass


class DegenerateRadicandError(ValueError):
    pass


def _rat(x: Any) -> Rational:
    """Normalize an int/Fraction; integral fractions become ints."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return _rat(Fraction(x))
    raise TypeError(f"not a rational: {x!r}")


def is_rational(x: Any) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def rational_sqrt(r: Rational) -> Rational | None:
    """Exact square root of a nonnegative rational, or None."""
    r = Fraction(r)
    if r < 0:
        return None
    p, q = r.numerator, r.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        return _rat(Fraction(sp, sq))
    return None


def rat_str(x: Rational) -> str:
    x = _rat(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# Q(sqrt(d))
# --------------------------------------------------------------------------

class QuadExt:
    """``rat + irr*sqrt(radicand)`` with a fixed non-square rational radicand.

    Rationals (int/Fraction) mix freely with a QuadExt; two QuadExt values
    with different radicands never do.
    """

    __slots__ = ("radicand", "rat", "irr")

    def __init__(self, radicand: Rational, rat: Rational = 0, irr: Rational = 0):
        self.radicand = _rat(radicand)
        self.rat = _rat(rat)
        self.irr = _rat(irr)

    @classmethod
    def _raw(cls, radicand, rat, irr) -> QuadExt:
        obj = object.__new__(cls)
        obj.radicand = radicand
        obj.rat = rat
        obj.irr = irr
        return obj

    @classmethod
    def sqrt_of(cls, radicand: Rational) -> QuadExt:
        return cls(radicand, 0, 1)

    def _coerce(self, other) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other.radicand is not self.radicand and other.radicand != self.radicand:
                raise DomainMismatchError(
                    f"radicands differ: {self.radicand} vs {other.radicand}")
            return other
        if is_rational(other):
            return QuadExt._raw(self.radicand, _rat(other), 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt._raw(self.radicand, _rat(self.rat + o.rat), _rat(self.irr + o.irr))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(self.radicand, -self.rat, -self.irr)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt._raw(self.radicand, _rat(self.rat - o.rat), _rat(self.irr - o.irr))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if is_rational(other):
            return QuadExt._raw(self.radicand, _rat(self.rat * other), _rat(self.irr * other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self.rat, self.irr, o.rat, o.irr
        if not b:
            return QuadExt._raw(self.radicand, _rat(a * c), _rat(a * e))
        if not e:
            return QuadExt._raw(self.radicand, _rat(a * c), _rat(b * c))
        return QuadExt._raw(self.radicand,
                            _rat(a * c + b * e * self.radicand),
                            _rat(a * e + b * c))

    __rmul__ = __mul__

    def norm(self) -> Rational:
        return _rat(self.rat * self.rat - self.irr * self.irr * self.radicand)

    def conjugate(self) -> QuadExt:
        return QuadExt._raw(self.radicand, self.rat, -self.irr)

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(%s))" % rat_str(self.radicand))
        return QuadExt._raw(self.radicand, _rat(Fraction(self.rat) / n),
                            _rat(Fraction(-self.irr) / n))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        return ring_pow(self, k)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if other.radicand != self.radicand:
                raise DomainMismatchError(
                    f"radicands differ: {self.radicand} vs {other.radicand}")
            return self.rat == other.rat and self.irr == other.irr
        if is_rational(other):
            return self.irr == 0 and self.rat == other
        return NotImplemented

    def __hash__(self):
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.radicand, self.rat, self.irr))

    def __bool__(self):
        return bool(self.rat) or bool(self.irr)

    def __float__(self):
        return float(self.rat) + float(self.irr) * math.sqrt(self.radicand)

    def __complex__(self):
        if self.radicand < 0:
            return complex(float(self.rat), float(self.irr) * math.sqrt(-self.radicand))
        return complex(float(self))

    def sqrt(self) -> QuadExt | None:
        """A square root inside this same field, or None if there is none."""
        if self.irr == 0:
            r = rational_sqrt(self.rat)
            if r is not None:
                return QuadExt._raw(self.radicand, r, 0)
            # rat = s^2 * radicand for rational s
            s = rational_sqrt(Fraction(self.rat) / self.radicand)
            if s is not None:
                return QuadExt._raw(self.radicand, 0, s)
            return None
        # (p + s*sqrt(d))^2 = rat + irr*sqrt(d): p^2 + d s^2 = rat, 2 p s = irr
        disc = rational_sqrt(self.norm())
        if disc is None:
            return None
        for p2 in (Fraction(self.rat + disc, 2), Fraction(self.rat - disc, 2)):
            p = rational_sqrt(p2)
            if p:
                return QuadExt._raw(self.radicand, p, _rat(Fraction(self.irr) / (2 * p)))
        return None

    def __repr__(self):
        return f"QuadExt({rat_str(self.radicand)}, {rat_str(self.rat)}, {rat_str(self.irr)})"

    def __str__(self):
        root = f"sqrt({rat_str(self.radicand)})"
        if self.irr == 0:
            return rat_str(self.rat)
        if self.irr == 1:
            irr = root
        elif self.irr == -1:
            irr = "-" + root
        else:
            irr = f"{rat_str(self.irr)}*{root}"
        if self.rat == 0:
            return irr
        if irr.startswith("-"):
            return f"{rat_str(self.rat)}{irr}"
        return f"{rat_str(self.rat)}+{irr}"


# --------------------------------------------------------------------------
# two-variable polynomials
# --------------------------------------------------------------------------

class BiPoly:
    """Sparse polynomial in two named variables with rational coefficients.

    Exponents are integers; the first variable may carry negative exponents
    so that a monomial like ``x`` can be inverted (Laurent polynomials in the
    first variable).  Terms print in graded order: total degree ascending,
    then descending power of the first variable.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: dict | None = None, variables: tuple[str, str] = ("x", "y")):
        self.variables = tuple(variables)
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = _rat(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, variables) -> BiPoly:
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Rational, variables=("x", "y")) -> BiPoly:
        return cls({(0, 0): c}, variables)

    @classmethod
    def gens(cls, variables=("x", "y")) -> tuple[BiPoly, BiPoly]:
        return cls({(1, 0): 1}, variables), cls({(0, 1): 1}, variables)

    def _coerce(self, other) -> BiPoly | None:
        if isinstance(other, BiPoly):
            if other.variables != self.variables:
                raise DomainMismatchError(
                    f"variable sets differ: {self.variables} vs {other.variables}")
            return other
        if is_rational(other):
            return BiPoly.const(other, self.variables)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            s = _rat(out.get(k, 0) + c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiPoly._raw(out, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if is_rational(other):
            if not other:
                return BiPoly._raw({}, self.variables)
            return BiPoly._raw({k: _rat(c * other) for k, c in self.terms.items()}, self.variables)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly({k: c for k, c in out.items()}, self.variables)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only scalar division; polynomials have no inverses
        if is_rational(other):
            return self * (Fraction(1) / Fraction(other))
        raise UnsupportedOperationError("BiPoly division is only defined by nonzero rationals")

    def __pow__(self, k: int):
        return ring_pow(self, k)

    def monomial_inverse(self) -> BiPoly:
        """Inverse of a single term c*x^i*y^j (y-degree must be 0)."""
        if len(self.terms) != 1:
            raise UnsupportedOperationError("only a monomial in the first variable is invertible")
        ((i, j), c), = self.terms.items()
        if j != 0:
            raise UnsupportedOperationError("the second variable is not invertible")
        return BiPoly({(-i, 0): Fraction(1) / Fraction(c)}, self.variables)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            if other.variables != self.variables:
                raise DomainMismatchError(
                    f"variable sets differ: {self.variables} vs {other.variables}")
            return self.terms == other.terms
        if is_rational(other):
            if not other:
                return not self.terms
            return self.terms == {(0, 0): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not self.terms:
                self._hash = hash(0)
            elif set(self.terms) == {(0, 0)}:
                self._hash = hash(self.terms[(0, 0)])
            else:
                self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def __call__(self, x0, y0):
        return poly_eval(self, x0, y0)

    def sorted_terms(self) -> list[tuple[tuple[int, int], Rational]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def __repr__(self):
        return f"BiPoly({self.terms!r}, {self.variables!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        xs, ys = self.variables
        parts = []
        for (i, j), c in self.sorted_terms():
            mono = []
            for name, e in ((xs, i), (ys, j)):
                if e == 1:
                    mono.append(name)
                elif e:
                    mono.append(f"{name}^{e}")
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = rat_str(mag)
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = "*".join([rat_str(mag)] + mono)
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# --------------------------------------------------------------------------
# complex floats
# --------------------------------------------------------------------------

class ComplexApprox:
    """Double-precision complex number.  ``==`` is deliberately unsupported;
    compare with :meth:`close` and an explicit tolerance."""

    __slots__ = ("z",)

    def __init__(self, re: float = 0.0, im: float = 0.0):
        self.z = complex(re, im)

    @classmethod
    def _wrap(cls, z: complex) -> ComplexApprox:
        obj = object.__new__(cls)
        obj.z = z
        return obj

    @classmethod
    def unit(cls, x: float) -> ComplexApprox:
        """e(x) = exp(2*pi*i*x)."""
        return cls._wrap(cmath.exp(2j * math.pi * x))

    @property
    def re(self) -> float:
        return self.z.real

    @property
    def im(self) -> float:
        return self.z.imag

    @staticmethod
    def _value(other):
        if isinstance(other, ComplexApprox):
            return other.z
        if isinstance(other, (int, float, Fraction, complex)):
            return complex(other)
        if isinstance(other, QuadExt):
            return complex(other)
        return None

    def __add__(self, other):
        o = self._value(other)
        return NotImplemented if o is None else ComplexApprox._wrap(self.z + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._value(other)
        return NotImplemented if o is None else ComplexApprox._wrap(self.z - o)

    def __rsub__(self, other):
        o = self._value(other)
        return NotImplemented if o is None else ComplexApprox._wrap(o - self.z)

    def __mul__(self, other):
        o = self._value(other)
        return NotImplemented if o is None else ComplexApprox._wrap(self.z * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._value(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("complex division by zero")
        return ComplexApprox._wrap(self.z / o)

    def __rtruediv__(self, other):
        o = self._value(other)
        if o is None:
            return NotImplemented
        return ComplexApprox._wrap(o) / self

    def __neg__(self):
        return ComplexApprox._wrap(-self.z)

    def __pow__(self, k: int):
        return ring_pow(self, k)

    def __abs__(self):
        return abs(self.z)

    def __complex__(self):
        return self.z

    def conjugate(self) -> ComplexApprox:
        return ComplexApprox._wrap(self.z.conjugate())

    def inverse(self) -> ComplexApprox:
        return ComplexApprox._wrap(1) / self

    def close(self, other, tol: float) -> bool:
        o = self._value(other)
        if o is None:
            raise DomainMismatchError(f"cannot compare ComplexApprox with {type(other).__name__}")
        return abs(self.z - o) <= tol

    def __eq__(self, other):
        raise TypeError("ComplexApprox has no exact equality; use close(other, tol)")

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"ComplexApprox({self.z.real!r}, {self.z.imag!r})"

    def __str__(self):
        return f"{self.z.real!r}{self.z.imag:+}j"


def unit_circle(x: float) -> ComplexApprox:
    return ComplexApprox.unit(x)


# --------------------------------------------------------------------------
# generic ring helpers
# --------------------------------------------------------------------------

def _check_domain(x, y) -> None:
    if isinstance(x, QuadExt) and isinstance(y, QuadExt) and x.radicand != y.radicand:
        raise DomainMismatchError(f"radicands differ: {x.radicand} vs {y.radicand}")
    if isinstance(x, BiPoly) and isinstance(y, BiPoly) and x.variables != y.variables:
        raise DomainMismatchError(f"variable sets differ: {x.variables} vs {y.variables}")
    kinds = {type(v) for v in (x, y) if not is_rational(v)}
    if len(kinds) > 1:
        raise DomainMismatchError(f"mixed domains: {sorted(k.__name__ for k in kinds)}")


def ring_add(x, y):
    _check_domain(x, y)
    return x + y


def ring_mul(x, y):
    _check_domain(x, y)
    return x * y


def ring_neg(x):
    return -x


def ring_eq(x, y, tol: float | None = None) -> bool:
    _check_domain(x, y)
    if isinstance(x, ComplexApprox) or isinstance(y, ComplexApprox):
        if tol is None:
            raise ValueError("ComplexApprox comparison needs an explicit tolerance")
        a = x if isinstance(x, ComplexApprox) else ComplexApprox._wrap(complex(x))
        return a.close(y, tol)
    return x == y


def is_zero(x, tol: float | None = None) -> bool:
    if isinstance(x, ComplexApprox):
        if tol is None:
            raise ValueError("ComplexApprox comparison needs an explicit tolerance")
        return abs(x.z) <= tol
    return not x


def field_inv(x):
    if isinstance(x, BiPoly):
        raise UnsupportedOperationError("BiPoly has no multiplicative inverses")
    if is_rational(x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return _rat(Fraction(1) / Fraction(x))
    if isinstance(x, (QuadExt, ComplexApprox)):
        return x.inverse()
    raise TypeError(f"unknown coefficient type {type(x).__name__}")


def ring_pow(x, k: int):
    if k < 0:
        return ring_pow(field_inv(x), -k)
    result = 1
    base = x
    while k:
        if k & 1:
            result = base * result
        k >>= 1
        if k:
            base = base * base
    return result


def one_like(x):
    """Multiplicative identity in the domain of ``x``."""
    if isinstance(x, QuadExt):
        return QuadExt._raw(x.radicand, 1, 0)
    if isinstance(x, BiPoly):
        return BiPoly.const(1, x.variables)
    if isinstance(x, ComplexApprox):
        return ComplexApprox(1.0)
    return 1


def zero_like(x):
    if isinstance(x, QuadExt):
        return QuadExt._raw(x.radicand, 0, 0)
    if isinstance(x, BiPoly):
        return BiPoly._raw({}, x.variables)
    if isinstance(x, ComplexApprox):
        return ComplexApprox(0.0)
    return 0


@dataclass(frozen=True)
class SqrtDomain:
    """Result of :func:`adjoin_sqrt`: the field holding the root, and the root."""

    radicand: Rational
    root: Rational | QuadExt

    @property
    def is_rational(self) -> bool:
        return is_rational(self.root)


def _squarefree_part(m: int, bound: int = 10 ** 5) -> tuple[int, int]:
    """(s, k) with m = s k^2; s is squarefree unless m has a square factor above ``bound``."""
    sign, m = (-1, -m) if m < 0 else (1, m)
    k = 1
    p = 2
    while p <= bound and p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(m)
    if r * r == m:
        k, m = k * r, 1
    return sign * m, k


def adjoin_sqrt(r: Rational) -> SqrtDomain:
    """sqrt(r) in Q, or in Q(sqrt(s)) with s the squarefree integer part of r."""
    r = _rat(r)
    if r == 0:
        raise DegenerateRadicandError("cannot adjoin sqrt(0)")
    root = rational_sqrt(r)
    if root is not None:
        return SqrtDomain(r, root)
    f = Fraction(r)
    # sqrt(p/q) = sqrt(p q) / q = k sqrt(s) / q
    s, k = _squarefree_part(f.numerator * f.denominator)
    return SqrtDomain(s, QuadExt(s, 0, Fraction(k, f.denominator)))


def poly_eval(p: BiPoly, x0, y0):
    """Substitute ``x0``, ``y0`` for the two variables of ``p``."""
    if not p.terms:
        return 0
    xpow: dict[int, Any] = {}
    ypow: dict[int, Any] = {}
    total = 0
    for (i, j), c in p.terms.items():
        if i not in xpow:
            xpow[i] = ring_pow(x0, i)
        if j not in ypow:
            ypow[j] = ring_pow(y0, j)
        total = total + xpow[i] * ypow[j] * c
    return total


# --------------------------------------------------------------------------
# (de)serialization
# --------------------------------------------------------------------------

def serialize(x) -> str:
    if is_rational(x):
        return rat_str(x)
    return str(x)


def json_value(x):
    """JSON form of a ring element: a serialized string, or {"re", "im"} doubles."""
    if isinstance(x, ComplexApprox):
        return {"re": x.re, "im": x.im}
    return serialize(x)


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^(?:(?P<rat>{_RAT})(?=[+-]|$))?"
    rf"(?:(?P<sign>[+-])?(?:(?P<irr>\d+(?:/\d+)?)\*)?sqrt\((?P<rad>{_RAT})\))?$")


def parse_exact(text: str) -> Rational | QuadExt:
    """Parse the serialized form of a rational or a quadratic-extension value."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty value")
    if re.fullmatch(_RAT, s):
        return _rat(Fraction(s))
    m = _QUAD_RE.match(s)
    if not m or m.group("rad") is None:
        raise ValueError(f"cannot parse exact value {text!r}")
    rat = Fraction(m.group("rat") or 0)
    irr = Fraction(m.group("irr") or 1)
    if m.group("sign") == "-":
        irr = -irr
    dom = adjoin_sqrt(Fraction(m.group("rad")))
    if dom.is_rational:
        return _rat(rat + irr * dom.root)
    return QuadExt(dom.radicand, rat, irr)


# --------------------------------------------------------------------------
# 2x2 linear algebra
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Vec2:
    v1: Any
    v2: Any

    def __iter__(self):
        yield self.v1
        yield self.v2

    def dot(self, other: Vec2):
        return self.v1 * other.v1 + self.v2 * other.v2


@dataclass(frozen=True)
class Mat2:
    m11: Any
    m12: Any
    m21: Any
    m22: Any

    @classmethod
    def identity(cls, like=1) -> Mat2:
        return cls(one_like(like), zero_like(like), zero_like(like), one_like(like))

    def entries(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22)

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(self.m11 * other.m11 + self.m12 * other.m21,
                        self.m11 * other.m12 + self.m12 * other.m22,
                        self.m21 * other.m11 + self.m22 * other.m21,
                        self.m21 * other.m12 + self.m22 * other.m22)
        if isinstance(other, Vec2):
            return Vec2(self.m11 * other.v1 + self.m12 * other.v2,
                        self.m21 * other.v1 + self.m22 * other.v2)
        return NotImplemented

    def __rmatmul__(self, row):
        # row vector times matrix
        if isinstance(row, Vec2):
            return Vec2(row.v1 * self.m11 + row.v2 * self.m21,
                        row.v1 * self.m12 + row.v2 * self.m22)
        return NotImplemented

    def scale(self, c) -> Mat2:
        return Mat2(self.m11 * c, self.m12 * c, self.m21 * c, self.m22 * c)

    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def adjugate(self) -> Mat2:
        return Mat2(self.m22, -self.m12, -self.m21, self.m11)

    def inverse(self) -> Mat2:
        return self.adjugate().scale(field_inv(self.det()))

    def equals(self, other: Mat2, tol: float | None = None) -> bool:
        return all(is_zero(x - y, tol) for x, y in zip(self.entries(), other.entries()))
