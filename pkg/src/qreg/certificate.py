"""Reversal certificates: a matrix S = [[a, b], [c, d]] with ad - bc = 1 and
a, b nonzero such that, for every digit e,

    ab (a1 beta - a3 alpha - a4 beta) + a2 (beta + 2bc beta - cd alpha) = 0

where A(e) = [[a1, a2], [a3, a4]].  Any representation admitting such an S
is invariant under base-q digit reversal for every n not divisible by q; for
multiples of q the reversed expansion loses trailing zeros, which is harmless
exactly when A(0) fixes the seed (see ``seed_is_fixed``).
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .digits import DigitWord, reverse
from .linrep import LinearRep
from .rings import (Mat2, QuadExt, UnsupportedOperationError, Vec2, _rat, adjoin_sqrt, field_inv,
                    is_rational, is_zero, json_value, rational_sqrt, serialize)


@dataclass(frozen=True)
class Certificate:
    a: Any
    b: Any
    c: Any
    d: Any

    @property
    def matrix(self) -> Mat2:
        return Mat2(self.a, self.b, self.c, self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self) -> Mat2:
        # adjugate; equals S^-1 whenever det S = 1
        return Mat2(self.d, -self.b, -self.c, self.a)

    def violations(self, tol: float | None = None) -> list[str]:
        out = []
        if not is_zero(self.det() - 1, tol):
            out.append(f"ad - bc = {serialize(self.det())}, expected 1")
        if is_zero(self.a, tol):
            out.append("a = 0")
        if is_zero(self.b, tol):
            out.append("b = 0")
        return out

    def to_json(self) -> dict:
        return {k: json_value(getattr(self, k)) for k in "abcd"}


@dataclass(frozen=True)
class ResidualReport:
    residuals: tuple
    det: Any
    nonzero_ab: bool
    det_is_one: bool
    tol: float | None = None
    failing: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.nonzero_ab and self.det_is_one and not self.failing

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "residuals": [json_value(r) for r in self.residuals],
            "det": json_value(self.det),
            "nonzero_ab": self.nonzero_ab,
            "failing_digits": list(self.failing),
        }


def residual(rep: LinearRep, cert: Certificate, e: int):
    if not 0 <= e < rep.base:
        raise ValueError(f"digit {e} out of range for base {rep.base}")
    a1, a2, a3, a4 = rep.matrices[e].entries()
    alpha, beta = rep.alpha, rep.beta
    a, b, c, d = cert.a, cert.b, cert.c, cert.d
    return (a * b * (a1 * beta - a3 * alpha - a4 * beta)
            + a2 * (beta + 2 * b * c * beta - c * d * alpha))


def check(rep: LinearRep, cert: Certificate, tol: float | None = None) -> ResidualReport:
    res = tuple(residual(rep, cert, e) for e in range(rep.base))
    failing = tuple(e for e, r in enumerate(res) if not is_zero(r, tol))
    det = cert.det()
    return ResidualReport(
        residuals=res,
        det=det,
        nonzero_ab=not is_zero(cert.a, tol) and not is_zero(cert.b, tol),
        det_is_one=is_zero(det - 1, tol),
        tol=tol,
        failing=failing,
    )


# --------------------------------------------------------------------------
# identities from the induction proof
# --------------------------------------------------------------------------

def _apply_word(rep: LinearRep, digits: Sequence[int], v: Vec2) -> Vec2:
    """A(d[0]) A(d[1]) ... A(d[-1]) v."""
    for e in reversed(digits):
        v = rep.matrices[e] @ v
    return v


def _digits(rep: LinearRep, w) -> tuple[int, ...]:
    return rep._digits_of(w)


def _proof_identity(rep, cert, w, row: Vec2, col: Vec2, tol):
    digits = _digits(rep, w)
    Sinv = cert.inverse()
    lhs = (row @ Sinv).dot(_apply_word(rep, digits, rep.seed))
    rhs = _apply_word(rep, digits[::-1], cert.matrix @ col).v1
    return is_zero(lhs - rhs, tol)


def proof_identity_left(rep: LinearRep, cert: Certificate, w: DigitWord | Sequence[int],
                        tol: float | None = None) -> bool:
    """(a,0) S^-1 P(w) (alpha,beta)^T == (1,0) P(w reversed) S (d alpha - b beta, 0)^T."""
    a, b, d = cert.a, cert.b, cert.d
    zero = a - a
    col = Vec2(d * rep.alpha - b * rep.beta, zero)
    return _proof_identity(rep, cert, w, Vec2(a, zero), col, tol)


def proof_identity_right(rep: LinearRep, cert: Certificate, w: DigitWord | Sequence[int],
                         tol: float | None = None) -> bool:
    """(0,b) S^-1 P(w) (alpha,beta)^T == (1,0) P(w reversed) S (0, -c alpha + a beta)^T."""
    a, b, c = cert.a, cert.b, cert.c
    zero = b - b
    col = Vec2(zero, -c * rep.alpha + a * rep.beta)
    return _proof_identity(rep, cert, w, Vec2(zero, b), col, tol)


def conjugated_entries(rep: LinearRep, cert: Certificate, e: int,
                       tol: float | None = None) -> Mat2:
    """S^-1 A(e) S, cross-checked against the closed forms of its off-diagonal entries."""
    A = rep.matrices[e]
    conj = cert.inverse() @ A @ cert.matrix
    a1, a2, a3, a4 = A.entries()
    a, b, c, d = cert.a, cert.b, cert.c, cert.d
    s2 = b * d * a1 + d * d * a2 - b * b * a3 - b * d * a4
    s3 = -a * c * a1 - c * c * a2 + a * a * a3 + a * c * a4
    if not (is_zero(conj.m12 - s2, tol) and is_zero(conj.m21 - s3, tol)):
        raise ArithmeticError(f"closed-form conjugate entries disagree for digit {e}")
    return conj


def s2s3_relation(rep: LinearRep, cert: Certificate, e: int, tol: float | None = None) -> bool:
    """a(-c alpha + a beta) s2(e) == b(d alpha - b beta) s3(e)."""
    conj = conjugated_entries(rep, cert, e, tol)
    a, b, c, d = cert.a, cert.b, cert.c, cert.d
    alpha, beta = rep.alpha, rep.beta
    lhs = a * (-c * alpha + a * beta) * conj.m12
    rhs = b * (d * alpha - b * beta) * conj.m21
    return is_zero(lhs - rhs, tol)


# --------------------------------------------------------------------------
# reversal sweep
# --------------------------------------------------------------------------

def seed_is_fixed(rep: LinearRep, tol: float | None = None) -> bool:
    """True when A(0) (alpha, beta) = (alpha, beta), so leading zero digits are inert."""
    moved = rep.matrix(0) @ rep.seed
    return _same(moved.v1, rep.seed.v1, tol) and _same(moved.v2, rep.seed.v2, tol)


def _same(x, y, tol):
    return is_zero(x - y, tol)


def _scan(rep: LinearRep, lo: int, hi: int, tol: float | None) -> int | None:
    cache: dict[int, Any] = {}
    q = rep.base
    for n in range(lo, hi):
        x = cache.pop(n, None)
        if x is None:
            x = rep.eval(n)
        r = reverse(n, q)
        if r == n:
            continue
        y = rep.eval(r)
        if r > n and r < hi:
            cache[r] = y
        if not _same(x, y, tol):
            return n
    return None


def verify_reversal(rep: LinearRep, N: int, tol: float | None = None,
                    workers: int = 1) -> int | None:
    """Smallest 1 <= n < N with x_n != x_{reverse(n)}, or None."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if workers <= 1 or N < 4096:
        return _scan(rep, 1, N, tol)
    bounds = [1 + (N - 1) * i // workers for i in range(workers + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_scan, rep, lo, hi, tol)
                   for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        hits = [f.result() for f in futures]
    hits = [h for h in hits if h is not None]
    return min(hits) if hits else None


def default_workers() -> int:
    env = os.environ.get("QREG_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


# --------------------------------------------------------------------------
# solver
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SolveFailure:
    """Why no certificate was produced, with the solution set of the linear
    system in (u, v, w) = (ab, bc, cd) as particular point + direction basis."""

    reason: str
    particular: tuple | None = None
    basis: tuple = ()
    system: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "reason": self.reason,
            "unknowns": ["ab", "bc", "cd"],
            "equations": [[serialize(x) for x in row] for row in self.system],
            "particular": None if self.particular is None else [serialize(x) for x in self.particular],
            "basis": [[serialize(x) for x in vec] for vec in self.basis],
        }


class NoCertificateError(ArithmeticError):
    def __init__(self, witness: SolveFailure):
        super().__init__(witness.reason)
        self.witness = witness


def _div(x, y):
    if is_rational(x) and is_rational(y):
        return _rat(Fraction(x) / Fraction(y))
    return x * field_inv(y)


def _affine_solve(rows: list[list], rhs: list) -> tuple[list, list[list]] | None:
    """Solution set {p + sum t_i n_i} of rows . x = rhs, or None if inconsistent."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 3
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if not is_zero(m[i][col])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field_inv(m[r][col])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][col]):
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(m)):
        if not is_zero(m[i][ncols]):
            return None
    point = [0] * ncols
    for i, col in enumerate(pivots):
        point[col] = m[i][ncols]
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [0] * ncols
        vec[free] = 1
        for i, col in enumerate(pivots):
            vec[col] = -m[i][free]
        basis.append(vec)
    return point, basis


def _restrict(point, basis, coord: int, value):
    """Intersect the affine space with {x[coord] = value}; None if empty."""
    slopes = [vec[coord] for vec in basis]
    k = next((i for i, s in enumerate(slopes) if not is_zero(s)), None)
    if k is None:
        return (point, basis) if is_zero(point[coord] - value) else None
    t = _div(value - point[coord], slopes[k])
    new_point = [p + t * n for p, n in zip(point, basis[k])]
    new_basis = []
    for i, vec in enumerate(basis):
        if i == k:
            continue
        f = _div(slopes[i], slopes[k])
        new_basis.append([x - f * y for x, y in zip(vec, basis[k])])
    return new_point, new_basis


def _height(x) -> tuple:
    if is_rational(x):
        x = Fraction(x)
        return (0, max(abs(x.numerator), x.denominator), 0, x < 0)
    if isinstance(x, QuadExt):
        hr = Fraction(x.rat)
        hi = Fraction(x.irr)
        return (1, max(abs(hr.numerator), hr.denominator),
                max(abs(hi.numerator), hi.denominator), hi < 0)
    return (2,)


def _field_sqrt(x, allow_extension: bool, radicand=None):
    """Square root of x inside Q or Q(sqrt(radicand)); with allow_extension,
    a rational non-square over Q gets its square root adjoined."""
    if is_rational(x) and radicand is not None:
        return QuadExt(radicand, x).sqrt()
    if is_rational(x):
        r = rational_sqrt(x)
        if r is not None:
            return r
        if allow_extension:
            return adjoin_sqrt(x).root
        return None
    if isinstance(x, QuadExt):
        return x.sqrt()
    return None


def _roots_on_line(point, direction, allow_extension: bool, radicand=None) -> list:
    """Parameters t where u*w - v*(v+1) vanishes at point + t*direction.

    Returns [] if none, ['any'] if it vanishes identically.
    """
    u0, v0, w0 = point
    u1, v1, w1 = direction
    c2 = u1 * w1 - v1 * v1
    c1 = u0 * w1 + u1 * w0 - 2 * v0 * v1 - v1
    c0 = u0 * w0 - v0 * v0 - v0
    if is_zero(c2):
        if is_zero(c1):
            return ["any"] if is_zero(c0) else []
        return [_div(-c0, c1)]
    disc = c1 * c1 - 4 * c2 * c0
    if is_zero(disc):
        return [_div(-c1, 2 * c2)]
    root = _field_sqrt(disc, allow_extension, radicand)
    if root is None:
        return []
    return [_div(-c1 + root, 2 * c2), _div(-c1 - root, 2 * c2)]


_PREFERRED = (1, 0, 0)  # u, v, w
_ORDERS = [(1, 2, 0), (2, 1, 0), (0, 1, 2), (0, 2, 1), (1, 0, 2), (2, 0, 1)]


def _quadric_point(point, basis, allow_extension: bool, radicand=None):
    """A point of the affine space on u*w = v(v+1) with u != 0, following the
    tie-break order: u = 1 first, then v = 0, then w = 0, smallest-height v."""
    for fix_u in (True, False):
        space = (point, basis)
        if fix_u:
            if not basis or all(is_zero(vec[0]) for vec in basis):
                continue
            space = _restrict(point, basis, 0, 1)
            if space is None:
                continue
        for order in _ORDERS:
            p, B = space
            for coord in order:
                if len(B) <= 1:
                    break
                if all(is_zero(vec[coord]) for vec in B):
                    continue
                p, B = _restrict(p, B, coord, _PREFERRED[coord])
            if not B:
                cands = [p]
            else:
                cands = []
                for t in _roots_on_line(p, B[0], allow_extension, radicand):
                    if t == "any":
                        cands.extend([p, [x + y for x, y in zip(p, B[0])]])
                    else:
                        cands.append([x + t * y for x, y in zip(p, B[0])])
            good = []
            for u, v, w in cands:
                if is_zero(u) or not is_zero(u * w - v * (v + 1)):
                    continue
                good.append((u, v, w))
            if good:
                good.sort(key=lambda s: (_height(s[1]), _height(s[0]), _height(s[2])))
                return good[0]
    return None


def _field_of(rep: LinearRep):
    """(is_supported, radicand or None) for the entries of ``rep``."""
    values = [x for m in rep.matrices for x in m.entries()] + [rep.alpha, rep.beta]
    if not all(is_rational(x) or isinstance(x, QuadExt) for x in values):
        return False, None
    rads = {x.radicand for x in values if isinstance(x, QuadExt)}
    if len(rads) > 1:
        return False, None
    return True, (rads.pop() if rads else None)


def linear_system(rep: LinearRep) -> tuple[list[list], list]:
    """Rows of u*L(e) + v*2*beta*M(e) - w*alpha*M(e) = -beta*M(e) for every digit e,
    where L(e) = a1 beta - a3 alpha - a4 beta and M(e) = a2."""
    alpha, beta = rep.alpha, rep.beta
    rows, rhs = [], []
    for A in rep.matrices:
        a1, a2, a3, a4 = A.entries()
        L = a1 * beta - a3 * alpha - a4 * beta
        rows.append([L, 2 * beta * a2, -alpha * a2])
        rhs.append(-beta * a2)
    return rows, rhs


def solve(rep: LinearRep) -> Certificate:
    """Find a certificate with a = 1 for ``rep``.

    Raises NoCertificateError with a witness when the linear system in
    (ab, bc, cd) is inconsistent or its solution set misses the quadric
    (ab)(cd) = (bc)(bc + 1) away from ab = 0.
    """
    supported, radicand = _field_of(rep)
    if not supported:
        kinds = {type(x).__name__ for m in rep.matrices for x in m.entries()}
        raise UnsupportedOperationError(
            f"certificate solving needs rational or quadratic-field entries, got {sorted(kinds)}")
    rows, rhs = linear_system(rep)
    system = tuple(tuple(r) + (b,) for r, b in zip(rows, rhs))
    sol = _affine_solve(rows, rhs)
    if sol is None:
        raise NoCertificateError(SolveFailure("linear system is inconsistent", system=system))
    point, basis = sol
    found = _quadric_point(point, basis, False, radicand)
    if found is None and radicand is None:
        found = _quadric_point(point, basis, True)
    if found is None:
        raise NoCertificateError(SolveFailure(
            "no solution of the linear system meets ab*cd = bc*(bc+1) with ab != 0",
            tuple(point), tuple(tuple(v) for v in basis), system))
    u, v, w = found
    cert = Certificate(1, _norm(u), _norm(_div(v, u)), _norm(1 + v))
    if not is_zero(cert.c * cert.d - w) or not check(rep, cert).passed:
        raise NoCertificateError(SolveFailure(
            "recovered certificate failed re-check", tuple(point),
            tuple(tuple(v) for v in basis), system))
    return cert


def _norm(x):
    """Collapse rational-valued field elements to int or Fraction."""
    if isinstance(x, QuadExt) and x.irr == 0:
        x = x.rat
    return _rat(x) if is_rational(x) else x

