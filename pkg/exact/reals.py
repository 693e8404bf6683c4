"""Exact reals of the closed kind set {p/q, sqrt(p/q), a + b*sqrt(d), sqrt(a + b*sqrt(d))}.

Every value is immutable. Constructors collapse to the simplest kind, so a
value never carries a zero coefficient or a rational radical. Comparisons
against rationals take at most two squarings and digit extraction reduces to
integer square roots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from exact.isqrt import is_square_int, is_square_rational, isqrt, rational_sqrt
from utils.constants import MAX_FLOOR_CORRECTIONS, Ordering
from utils.errors import (
    InvariantViolation, NegativeRadicand, NonDyadicIncrement,
    OutOfUnitInterval, PerfectSquareInput, UnsupportedKind
)
from utils.logger import logger

RationalLike = Union[int, Fraction]


def _sgn(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _sign_of_sum(a: Fraction, b: Fraction, d: Fraction) -> int:
    # sign of a + b*sqrt(d) with d > 0 not a rational square
    sa, sb = _sgn(a), _sgn(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    return sa * _sgn(a * a - b * b * d)


@dataclass(frozen=True)
class QuadExt:
    a: Fraction
    b: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.d <= 0 or is_square_rational(self.d):
            raise ValueError(f"radicand {self.d} must be a positive non-square")
        if self.b == 0:
            raise ValueError("QuadExt needs a nonzero radical coefficient")

    def sign(self) -> int:
        return _sign_of_sum(self.a, self.b, self.d)

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


@dataclass(frozen=True)
class Rational:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class SqrtOf:
    inner: Union[Fraction, QuadExt]

    def __str__(self):
        return f"sqrt({self.inner})"


@dataclass(frozen=True)
class Quad:
    ext: QuadExt

    def __str__(self):
        return str(self.ext)


ExactReal = Union[Rational, SqrtOf, Quad]


def rational(value: RationalLike) -> Rational:
    return Rational(Fraction(value))


def quad(a: RationalLike, b: RationalLike, d: RationalLike) -> ExactReal:
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    if d <= 0:
        raise ValueError(f"radicand {d} must be positive")
    if b == 0:
        return Rational(a)
    root = rational_sqrt(d)
    if root is not None:
        return Rational(a + b * root)
    if a == 0 and b > 0:
        return SqrtOf(b * b * d)
    return Quad(QuadExt(a, b, d))


def _denest(ext: QuadExt):
    # sqrt(a + b*sqrt(d)) = c + e*sqrt(d) iff c^2 solves t^2 - a*t + b^2*d/4 = 0
    root = rational_sqrt(ext.a * ext.a - ext.b * ext.b * ext.d)
    if root is None:
        return None
    for t in ((ext.a + root) / 2, (ext.a - root) / 2):
        c = rational_sqrt(t) if t > 0 else None
        if c is None:
            continue
        e = ext.b / (2 * c)
        if _sign_of_sum(c, e, ext.d) < 0:
            c, e = -c, -e
        return quad(c, e, ext.d)
    return None


def sqrt_of(inner: Union[RationalLike, QuadExt, ExactReal]) -> ExactReal:
    if isinstance(inner, Rational):
        inner = inner.value
    elif isinstance(inner, Quad):
        inner = inner.ext
    elif isinstance(inner, SqrtOf):
        if isinstance(inner.inner, QuadExt):
            raise UnsupportedKind(f"sqrt of {inner} would nest radicals three deep")
        # sqrt(sqrt(r)) == sqrt(0 + 1*sqrt(r)), which never denests
        inner = QuadExt(Fraction(0), Fraction(1), inner.inner)

    if isinstance(inner, QuadExt):
        if inner.sign() < 0:
            raise NegativeRadicand(f"sqrt of negative value {inner}")
        denested = _denest(inner)
        if denested is not None:
            return denested
        return SqrtOf(inner)

    q = Fraction(inner)
    if q < 0:
        raise NegativeRadicand(f"sqrt of negative value {q}")
    root = rational_sqrt(q)
    if root is not None:
        return Rational(root)
    return SqrtOf(q)


def frac_sqrt(s: int) -> ExactReal:
    """frac(sqrt(s)) for a positive non-square integer s."""
    if s < 1 or is_square_int(s):
        raise PerfectSquareInput(f"{s} is a perfect square (or not positive)")
    return quad(-isqrt(s), 1, s)


def cmp_dyadic(x: ExactReal, t: RationalLike) -> Ordering:
    t = Fraction(t)
    if isinstance(x, Rational):
        return Ordering(_sgn(x.value - t))
    if isinstance(x, Quad):
        return Ordering(_sign_of_sum(x.ext.a - t, x.ext.b, x.ext.d))
    if isinstance(x, SqrtOf):
        if t < 0:
            return Ordering.GT
        if isinstance(x.inner, QuadExt):
            return Ordering(_sign_of_sum(x.inner.a - t * t, x.inner.b, x.inner.d))
        return Ordering(_sgn(x.inner - t * t))
    raise UnsupportedKind(f"not an exact real: {x!r}")


def sign(x: ExactReal) -> int:
    return int(cmp_dyadic(x, 0))


def in_unit_interval(x: ExactReal) -> bool:
    return sign(x) >= 0 and cmp_dyadic(x, 1) == Ordering.LT


def is_dyadic_rational(q: Fraction) -> bool:
    den = Fraction(q).denominator
    return den & (den - 1) == 0


def is_dyadic(x: ExactReal) -> bool:
    return isinstance(x, Rational) and is_dyadic_rational(x.value)


def describe(x: ExactReal) -> dict:
    """JSON-ready description of a value: its kind plus exact components."""
    def ext_json(ext: QuadExt) -> dict:
        return {"a": str(ext.a), "b": str(ext.b), "d": str(ext.d)}

    if isinstance(x, Rational):
        return {"kind": "rational", "value": str(x.value)}
    if isinstance(x, Quad):
        return {"kind": "quad", **ext_json(x.ext)}
    if isinstance(x.inner, QuadExt):
        return {"kind": "sqrt", "inner": ext_json(x.inner)}
    return {"kind": "sqrt", "inner": str(x.inner)}


def _require_unit(x: ExactReal):
    if not in_unit_interval(x):
        raise OutOfUnitInterval(f"{x} is not in [0, 1)")


def _floor_scaled_quad(ext: QuadExt, n: int) -> int:
    scale = 1 << n
    shifted = ext.a * scale
    radicand = ext.b * ext.b * ext.d * scale * scale
    num, den = radicand.numerator, radicand.denominator
    root = isqrt(num * den)
    # root/den <= |b|*sqrt(d)*2^n < (root+1)/den
    if ext.b > 0:
        k = math.floor(shifted + Fraction(root, den))
    else:
        k = math.floor(shifted - Fraction(root + 1, den))
    for _ in range(MAX_FLOOR_CORRECTIONS):
        if _sign_of_sum(ext.a - Fraction(k + 1, scale), ext.b, ext.d) < 0:
            return k
        k += 1
    raise InvariantViolation(f"floor estimate for {ext} at {n} bits did not settle")


def _floor_scaled_unchecked(x: ExactReal, n: int) -> int:
    if isinstance(x, Rational):
        return (x.value.numerator << n) // x.value.denominator
    if isinstance(x, SqrtOf):
        if isinstance(x.inner, QuadExt):
            # floor(sqrt(floor(Y))) == floor(sqrt(Y))
            return isqrt(_floor_scaled_quad(x.inner, 2 * n))
        p, q = x.inner.numerator, x.inner.denominator
        return isqrt((p * q) << (2 * n)) // q
    if isinstance(x, Quad):
        return _floor_scaled_quad(x.ext, n)
    raise UnsupportedKind(f"not an exact real: {x!r}")


def floor_scaled(x: ExactReal, n: int) -> int:
    """floor(2^n * x) for x in [0, 1); dyadic x use their terminating expansion."""
    if n < 0:
        raise ValueError(f"bit count must be nonnegative, got {n}")
    _require_unit(x)
    k = _floor_scaled_unchecked(x, n)
    logger.digits_extracted(x, n, type(x).__name__)
    return k


def floor_scaled_bisect(x: ExactReal, n: int) -> int:
    """Reference digit extraction by bisection on exact comparisons."""
    _require_unit(x)
    lo, hi = 0, 1 << n
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if cmp_dyadic(x, Fraction(mid, 1 << n)) == Ordering.LT:
            hi = mid
        else:
            lo = mid
    return lo


def square(x: ExactReal) -> ExactReal:
    if isinstance(x, Rational):
        return Rational(x.value * x.value)
    if isinstance(x, SqrtOf):
        if isinstance(x.inner, QuadExt):
            return quad(x.inner.a, x.inner.b, x.inner.d)
        return Rational(x.inner)
    if isinstance(x, Quad):
        a, b, d = x.ext.a, x.ext.b, x.ext.d
        return quad(a * a + b * b * d, 2 * a * b, d)
    raise UnsupportedKind(f"not an exact real: {x!r}")


def add_signed_dyadic(x: ExactReal, delta: RationalLike) -> ExactReal:
    delta = Fraction(delta)
    if not is_dyadic_rational(delta):
        raise NonDyadicIncrement(f"{delta} is not a dyadic rational")
    if isinstance(x, Rational):
        return Rational(x.value + delta)
    if isinstance(x, Quad):
        return quad(x.ext.a + delta, x.ext.b, x.ext.d)
    if isinstance(x, SqrtOf):
        if isinstance(x.inner, QuadExt):
            raise UnsupportedKind(f"cannot shift nested radical {x}")
        return quad(delta, 1, x.inner)
    raise UnsupportedKind(f"not an exact real: {x!r}")
