"""Dependency radii between the x digits of omega and the u digits of nu = omega^2.

A radius is certified by an exact interval test: the open image of the
prefix cell must not contain a digit breakpoint, so every irrational point of
the cell shares the same leading digits on the other side.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from exact.isqrt import isqrt
from exact.reals import (
    ExactReal, Rational, cmp_dyadic, floor_scaled, is_dyadic, sqrt_of, square
)
from utils.constants import Ordering, default_search_limit
from utils.errors import DyadicBoundary, OutOfUnitInterval, SearchLimitExceeded
from utils.logger import logger
from utils.serialization import rat_to_json


@dataclass(frozen=True)
class RadiusResult:
    kind: str
    number: str
    digits: int
    radius: int
    interval_lo: Fraction
    interval_hi: Fraction
    image_lo: ExactReal
    image_hi: ExactReal

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "number": self.number,
            "digits": self.digits,
            "radius": self.radius,
            "interval_lo": rat_to_json(self.interval_lo),
            "interval_hi": rat_to_json(self.interval_hi),
            "image_lo": str(self.image_lo),
            "image_hi": str(self.image_hi),
        }


def _require_open_unit(x: ExactReal):
    if cmp_dyadic(x, 0) != Ordering.GT or cmp_dyadic(x, 1) != Ordering.LT:
        raise OutOfUnitInterval(f"{x} is not in (0, 1)")


def _cell(x: ExactReal, length: int):
    k = floor_scaled(x, length)
    return Fraction(k, 1 << length), Fraction(k + 1, 1 << length)


def _has_interior_multiple(lo: Fraction, hi: Fraction, digits: int) -> bool:
    # is some k / 2^digits strictly inside (lo, hi)?
    scale = 1 << digits
    k = (lo.numerator * scale) // lo.denominator + 1
    return Fraction(k, scale) < hi


def _has_interior_square_root_multiple(lo: Fraction, hi: Fraction, digits: int) -> bool:
    # is some (k / 2^digits)^2 strictly inside (lo, hi)?
    scale = 1 << (2 * digits)
    k = isqrt((lo.numerator * scale) // lo.denominator) + 1
    return Fraction(k * k, scale) < hi


def dep_radius_N(omega: ExactReal, r: int, search_limit: Optional[int] = None) -> RadiusResult:
    """Smallest N such that x_1..x_N pin down u_1..u_r around omega."""
    _require_open_unit(omega)
    if is_dyadic(square(omega)):
        raise DyadicBoundary(f"{omega}^2 is dyadic; u digits sit on a breakpoint for every N")
    limit = default_search_limit(r) if search_limit is None else search_limit

    for length in range(1, limit + 1):
        lo, hi = _cell(omega, length)
        if not _has_interior_multiple(lo * lo, hi * hi, r):
            logger.radius_certified("N", str(omega), r, length)
            return RadiusResult("N", str(omega), r, length, lo, hi,
                                Rational(lo * lo), Rational(hi * hi))

    raise SearchLimitExceeded(f"N({omega}, {r}) exceeds search limit {limit}")


def dep_radius_m(nu: ExactReal, n: int, search_limit: Optional[int] = None) -> RadiusResult:
    """Smallest m such that u_1..u_m pin down x_1..x_n around nu."""
    _require_open_unit(nu)
    if is_dyadic(sqrt_of(nu)):
        raise DyadicBoundary(f"sqrt({nu}) is dyadic; x digits sit on a breakpoint for every m")
    limit = default_search_limit(n) if search_limit is None else search_limit

    for length in range(1, limit + 1):
        lo, hi = _cell(nu, length)
        if not _has_interior_square_root_multiple(lo, hi, n):
            logger.radius_certified("m", str(nu), n, length)
            return RadiusResult("m", str(nu), n, length, lo, hi, sqrt_of(lo), sqrt_of(hi))

    raise SearchLimitExceeded(f"m({nu}, {n}) exceeds search limit {limit}")


def cutoff_for_sum(nu: ExactReal, n: int, search_limit: Optional[int] = None) -> int:
    """Index past which every partial difference of h_n at nu vanishes.

    For i > m = m(nu, n) both points of the i-th partial difference share
    their first i - 1 >= m digits with nu itself, so they sit in nu's
    certifying cell and agree on x_1..x_n.
    """
    return dep_radius_m(nu, n, search_limit).radius
