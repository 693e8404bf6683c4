from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exact.reals import (
    Quad, QuadExt, Rational, SqrtOf, add_signed_dyadic, cmp_dyadic, describe, floor_scaled,
    floor_scaled_bisect, frac_sqrt, in_unit_interval, is_dyadic, quad, rational, sign, sqrt_of,
    square
)
from utils.constants import Ordering
from utils.errors import (
    NegativeRadicand, NonDyadicIncrement, OutOfUnitInterval, PerfectSquareInput, UnsupportedKind
)

NON_SQUARES = [s for s in range(2, 200) if int(s ** 0.5) ** 2 != s]


@st.composite
def unit_fractions(draw, max_den=1 << 20):
    q = draw(st.integers(min_value=2, max_value=max_den))
    p = draw(st.integers(min_value=1, max_value=q - 1))
    return Fraction(p, q)


def test_constructors_collapse():
    assert quad(Fraction(1, 3), 0, 2) == Rational(Fraction(1, 3))
    assert quad(1, 2, 4) == Rational(Fraction(5))
    assert quad(0, 1, 2) == SqrtOf(Fraction(2))
    assert quad(0, 3, 2) == SqrtOf(Fraction(18))
    assert isinstance(quad(-1, 1, 2), Quad)
    assert sqrt_of(Fraction(1, 4)) == Rational(Fraction(1, 2))
    assert sqrt_of(Fraction(1, 3)) == SqrtOf(Fraction(1, 3))


def test_quad_ext_rejects_degenerate_parts():
    with pytest.raises(ValueError):
        QuadExt(Fraction(1), Fraction(1), Fraction(4))
    with pytest.raises(ValueError):
        QuadExt(Fraction(1), Fraction(0), Fraction(2))


def test_sqrt_of_errors():
    with pytest.raises(NegativeRadicand):
        sqrt_of(Fraction(-1, 2))
    with pytest.raises(NegativeRadicand):
        sqrt_of(QuadExt(Fraction(1), Fraction(-1), Fraction(2)))
    with pytest.raises(UnsupportedKind):
        sqrt_of(sqrt_of(frac_sqrt(2)))


def test_root_of_a_root_is_a_nested_radical():
    x = sqrt_of(sqrt_of(Fraction(1, 5)))
    assert x == SqrtOf(QuadExt(Fraction(0), Fraction(1), Fraction(1, 5)))
    assert square(x) == sqrt_of(Fraction(1, 5))
    # 5^(-1/4) = 0.66874...
    assert floor_scaled(x, 8) == 171
    assert floor_scaled(x, 40) == floor_scaled_bisect(x, 40)


def test_sqrt_of_square_denests():
    x = quad(-1, 1, 2)
    assert square(x) == quad(3, -2, 2)
    assert sqrt_of(square(x)) == x


def test_sqrt_of_non_denestable_stays_nested():
    x = sqrt_of(frac_sqrt(2))
    assert isinstance(x, SqrtOf)
    assert x.inner == QuadExt(Fraction(-1), Fraction(1), Fraction(2))


def test_frac_sqrt():
    assert frac_sqrt(2) == quad(-1, 1, 2)
    assert frac_sqrt(10) == quad(-3, 1, 10)
    with pytest.raises(PerfectSquareInput):
        frac_sqrt(4)
    with pytest.raises(PerfectSquareInput):
        frac_sqrt(0)


def test_comparisons():
    assert cmp_dyadic(sqrt_of(Fraction(1, 2)), Fraction(1, 2)) == Ordering.GT
    assert cmp_dyadic(sqrt_of(Fraction(1, 2)), Fraction(3, 4)) == Ordering.LT
    assert cmp_dyadic(frac_sqrt(2), Fraction(1, 2)) == Ordering.LT
    assert cmp_dyadic(rational(Fraction(1, 2)), Fraction(1, 2)) == Ordering.EQ
    assert sign(quad(1, -1, 2)) == -1
    assert in_unit_interval(rational(0))
    assert not in_unit_interval(rational(1))
    assert not in_unit_interval(quad(1, -1, 2))


def test_dyadic_detection():
    assert is_dyadic(rational(Fraction(3, 8)))
    assert not is_dyadic(rational(Fraction(1, 3)))
    assert not is_dyadic(sqrt_of(Fraction(1, 2)))


def test_known_prefixes():
    assert floor_scaled(sqrt_of(Fraction(1, 2)), 4) == 0b1011
    assert floor_scaled(sqrt_of(Fraction(1, 3)), 10) == 591
    assert floor_scaled(frac_sqrt(2), 8) == 0b01101010
    assert floor_scaled(rational(Fraction(1, 3)), 6) == 0b010101


def test_dyadic_values_use_terminating_expansion():
    assert floor_scaled(rational(Fraction(1, 2)), 3) == 0b100
    assert floor_scaled(sqrt_of(Fraction(1, 4)), 3) == 0b100


def test_floor_scaled_outside_unit_interval():
    with pytest.raises(OutOfUnitInterval):
        floor_scaled(rational(1), 3)
    with pytest.raises(OutOfUnitInterval):
        floor_scaled(quad(1, -1, 2), 3)


@settings(max_examples=60, deadline=None)
@given(unit_fractions(), st.integers(min_value=0, max_value=160))
def test_sqrt_fast_path_matches_bisection(q, n):
    x = sqrt_of(q)
    assert floor_scaled(x, n) == floor_scaled_bisect(x, n)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NON_SQUARES), st.integers(min_value=0, max_value=160))
def test_quad_path_matches_bisection(s, n):
    x = frac_sqrt(s)
    assert floor_scaled(x, n) == floor_scaled_bisect(x, n)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(NON_SQUARES[:40]), st.integers(min_value=0, max_value=96))
def test_nested_root_path_matches_bisection(s, n):
    x = sqrt_of(frac_sqrt(s))
    assert floor_scaled(x, n) == floor_scaled_bisect(x, n)


def test_shifts():
    assert add_signed_dyadic(rational(Fraction(1, 3)), Fraction(1, 32)) == rational(Fraction(35, 96))
    assert add_signed_dyadic(sqrt_of(Fraction(1, 3)), Fraction(-1, 2)) == quad(Fraction(-1, 2), 1, Fraction(1, 3))
    assert add_signed_dyadic(quad(Fraction(-1, 2), 1, Fraction(1, 3)), Fraction(1, 2)) == sqrt_of(Fraction(1, 3))
    with pytest.raises(NonDyadicIncrement):
        add_signed_dyadic(rational(Fraction(1, 3)), Fraction(1, 3))
    with pytest.raises(UnsupportedKind):
        add_signed_dyadic(sqrt_of(frac_sqrt(2)), Fraction(1, 4))


def test_describe():
    assert describe(rational(Fraction(1, 3))) == {"kind": "rational", "value": "1/3"}
    assert describe(sqrt_of(Fraction(1, 3))) == {"kind": "sqrt", "inner": "1/3"}
    assert describe(frac_sqrt(2)) == {"kind": "quad", "a": "-1", "b": "1", "d": "2"}


@st.composite
def unit_reals(draw):
    q = draw(unit_fractions())
    kind = draw(st.sampled_from(["rational", "sqrt", "quad", "nested"]))
    if kind == "rational":
        return rational(q)
    if kind == "sqrt":
        return sqrt_of(q)
    s = draw(st.sampled_from(NON_SQUARES))
    return frac_sqrt(s) if kind == "quad" else sqrt_of(frac_sqrt(s))


@settings(max_examples=100, deadline=None)
@given(unit_reals(), st.integers(min_value=0, max_value=200))
def test_floor_brackets_the_value(x, n):
    k = floor_scaled(x, n)
    assert cmp_dyadic(x, Fraction(k, 1 << n)) in (Ordering.EQ, Ordering.GT)
    assert cmp_dyadic(x, Fraction(k + 1, 1 << n)) == Ordering.LT


@settings(max_examples=15, deadline=None)
@given(unit_reals(), st.integers(min_value=384, max_value=512))
def test_fast_paths_match_bisection_at_depth(x, n):
    assert floor_scaled(x, n) == floor_scaled_bisect(x, n)


@pytest.mark.parametrize("x", [sqrt_of(Fraction(1, 3)), frac_sqrt(7), sqrt_of(frac_sqrt(3)),
                               sqrt_of(sqrt_of(Fraction(1, 5)))])
def test_fast_path_matches_bisection_at_512_bits(x):
    assert floor_scaled(x, 512) == floor_scaled_bisect(x, 512)
