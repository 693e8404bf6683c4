import math
from fractions import Fraction

import pytest

from calculus.dependency import cutoff_for_sum, dep_radius_N, dep_radius_m
from calculus.digits import prefix_bits
from exact.isqrt import isqrt
from exact.reals import floor_scaled, rational, sqrt_of
from utils.errors import DyadicBoundary, OutOfUnitInterval, SearchLimitExceeded

OMEGA = sqrt_of(Fraction(1, 3))
NU = rational(Fraction(1, 3))


def _no_integer_inside(a: Fraction, b: Fraction) -> bool:
    return math.ceil(b) - math.floor(a) <= 1


def scan_N(omega, r: int) -> int:
    """Least L whose x-cell maps inside a single u_1..u_r cell."""
    length = 1
    while True:
        k = floor_scaled(omega, length)
        lo, hi = Fraction(k, 1 << length), Fraction(k + 1, 1 << length)
        if _no_integer_inside(lo * lo * (1 << r), hi * hi * (1 << r)):
            return length
        length += 1


def scan_m(nu, n: int) -> int:
    """Least L whose u-cell has all square roots inside a single x_1..x_n cell."""
    length = 1
    while True:
        k = floor_scaled(nu, length)
        lo, hi = Fraction(k, 1 << length), Fraction(k + 1, 1 << length)
        # floor(2^n sqrt(y)) is constant on [lo, hi) iff no (j/2^n)^2 lies inside
        scale = 1 << (2 * n)
        j = isqrt(math.floor(lo * scale)) + 1
        if Fraction(j * j, scale) >= hi:
            return length
        length += 1


def test_known_radii():
    assert dep_radius_N(OMEGA, 1).radius == 3
    assert dep_radius_m(NU, 1).radius == 2
    assert cutoff_for_sum(NU, 1) == 2


def test_radius_result_payload():
    result = dep_radius_N(OMEGA, 1)
    assert result.interval_lo == Fraction(1, 2)
    assert result.interval_hi == Fraction(5, 8)
    payload = result.to_json()
    assert payload["kind"] == "N"
    assert payload["number"] == "sqrt(1/3)"
    assert payload["radius"] == 3
    assert payload["interval_hi"] == {"num": "5", "den": "8"}


def test_dyadic_images_have_no_radius():
    with pytest.raises(DyadicBoundary):
        dep_radius_N(sqrt_of(Fraction(1, 2)), 1)
    with pytest.raises(DyadicBoundary):
        dep_radius_m(rational(Fraction(1, 4)), 1)


def test_radius_needs_open_unit_interval():
    with pytest.raises(OutOfUnitInterval):
        dep_radius_m(rational(0), 1)


def test_search_limit():
    with pytest.raises(SearchLimitExceeded):
        dep_radius_N(OMEGA, 1, search_limit=2)


@pytest.mark.parametrize("k", range(1, 17))
def test_radii_match_definition_scan(k):
    assert dep_radius_N(OMEGA, k).radius == scan_N(OMEGA, k)
    assert dep_radius_m(NU, k).radius == scan_m(NU, k)


def test_radii_are_monotone():
    ns = [dep_radius_N(OMEGA, r).radius for r in range(1, 17)]
    ms = [dep_radius_m(NU, n).radius for n in range(1, 17)]
    assert ns == sorted(ns)
    assert ms == sorted(ms)


def test_radius_pins_digits():
    # every point sharing m digits with nu has the same first n digits of its root
    n = 8
    m = dep_radius_m(NU, n).radius
    prefix = prefix_bits(sqrt_of(NU), n)
    k = floor_scaled(NU, m)
    for j in range(1, 16):
        y = rational(Fraction(k, 1 << m) + Fraction(j, 16 << m))
        assert prefix_bits(sqrt_of(y), n) == prefix


@pytest.mark.parametrize("r", [1, 4, 8])
def test_x_radius_pins_u_digits(r):
    # every point sharing N digits with omega has the same first r digits of its square
    big_n = dep_radius_N(OMEGA, r).radius
    prefix = prefix_bits(NU, r)
    k = floor_scaled(OMEGA, big_n)
    for j in range(1, 16):
        w = Fraction(k, 1 << big_n) + Fraction(j, 16 << big_n)
        assert prefix_bits(rational(w * w), r) == prefix


def test_square_root_points_have_radii():
    nu = sqrt_of(Fraction(1, 5))
    assert dep_radius_m(nu, 2).radius == scan_m(nu, 2)
