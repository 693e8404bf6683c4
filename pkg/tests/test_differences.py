from fractions import Fraction

import pytest

from calculus.dependency import dep_radius_N
from calculus.differences import (
    QuotientContext, hybrid_point, partial_diff_f, partial_diff_h_at_flip, partial_quotient,
    partial_term_h, total_diff_f, total_diff_h, total_diff_u
)
from calculus.digits import DigitDelta, bit_at, flip_bit_u, flip_bits, h_n, induced_deltas
from exact.reals import add_signed_dyadic, rational, sqrt_of
from utils.constants import Source
from utils.errors import HorizonTooShort, InvalidPerturbation

THIRD = rational(Fraction(1, 3))
THIRD_FLIP_5 = rational(Fraction(35, 96))


def test_partial_diff_f():
    assert partial_diff_f(3, 10) == Fraction(1, 10)
    assert partial_diff_f(10, 10) == Fraction(1, 10)
    assert partial_diff_f(11, 10) == 0
    with pytest.raises(ValueError):
        partial_diff_f(0, 10)


def test_total_diff_f():
    dx = DigitDelta.from_mapping({5: 1, 8: -1, 10: -1}, 10)
    assert total_diff_f(dx, 10) == Fraction(-1, 10)
    assert total_diff_f(dx, 6) == Fraction(1, 6)
    with pytest.raises(HorizonTooShort):
        total_diff_f(dx, 12)


def test_hybrid_points():
    pert = flip_bits(THIRD, [2, 5])
    assert pert == rational(Fraction(11, 96))
    assert hybrid_point(THIRD, pert, 5, Source.PERT) == THIRD_FLIP_5
    assert hybrid_point(THIRD, pert, 5, Source.BASE) == THIRD
    assert hybrid_point(THIRD, pert, 2, Source.PERT) == pert
    assert hybrid_point(THIRD, pert, 1, Source.PERT) == pert
    with pytest.raises(ValueError):
        hybrid_point(THIRD, pert, 2, "neither")


def test_single_flip_term():
    assert partial_term_h(THIRD, THIRD_FLIP_5, 5, 10) == Fraction(-1, 10)
    assert partial_term_h(THIRD, THIRD_FLIP_5, 5, 4) == 0
    assert partial_term_h(THIRD, THIRD_FLIP_5, 3, 10) == 0


def test_partial_quotient():
    assert partial_quotient(Fraction(-1, 10), 1) == Fraction(-1, 10)
    assert partial_quotient(Fraction(-1, 10), -1) == Fraction(1, 10)
    with pytest.raises(ValueError):
        partial_quotient(Fraction(0), 2)
    with pytest.raises(ValueError):
        partial_quotient(Fraction(0), 0)


def test_zero_change_quotient_recomputes_with_digit_set():
    ctx = QuotientContext(THIRD, THIRD_FLIP_5, 3, 10)
    assert bit_at(THIRD_FLIP_5, 3) == 0
    with_one = add_signed_dyadic(THIRD_FLIP_5, Fraction(1, 8))
    expected = h_n(with_one, 10) - h_n(THIRD_FLIP_5, 10)
    assert partial_quotient(Fraction(0), 0, ctx) == expected


def test_total_diff_h_single_flip():
    report = total_diff_h(THIRD, THIRD_FLIP_5, 10)
    assert report.total == Fraction(-1, 10)
    assert report.lhs_direct == Fraction(-1, 10)
    assert report.nonzero_terms == {5: Fraction(-1, 10)}
    assert report.quotients[5] == Fraction(-1, 10)
    assert report.observed_cutoff == 5
    assert report.observed_cutoff <= report.predicted_cutoff
    assert report.to_json()["total"] == {"num": "-1", "den": "10"}


def test_total_diff_h_without_flips():
    report = total_diff_h(THIRD, THIRD, 10)
    assert report.total == 0
    assert report.nonzero_terms == {}
    assert report.observed_cutoff == 0


def test_total_diff_h_two_flips_telescopes():
    pert = flip_bits(THIRD, [2, 5])
    report = total_diff_h(THIRD, pert, 10)
    assert report.total == report.lhs_direct == h_n(pert, 10) - h_n(THIRD, 10)
    assert set(report.nonzero_terms) <= {2, 5}
    limit = report.predicted_cutoff + 64
    assert all(report.terms[i] == 0 for i in range(report.predicted_cutoff + 1, limit + 1))


def test_total_diff_h_scan_limit_below_cutoff():
    with pytest.raises(ValueError):
        total_diff_h(THIRD, THIRD_FLIP_5, 10, scan_limit=1)


def test_total_diff_u_telescopes():
    omega = sqrt_of(Fraction(1, 3))
    pert = flip_bits(omega, [1, 3, 6])
    dx = induced_deltas(omega, pert, 6)
    assert dx.support == (1, 3, 6)
    for r in range(1, 6):
        decomposition = total_diff_u(omega, dx, r)
        assert decomposition.residual_check
        assert decomposition.radius == dep_radius_N(omega, r).radius
        assert all(j <= decomposition.radius for j, c in decomposition.coeffs.items() if c != 0)


def test_total_diff_u_far_flips_do_nothing():
    omega = sqrt_of(Fraction(1, 3))
    dx = induced_deltas(omega, flip_bits(omega, [5, 9]), 9)
    decomposition = total_diff_u(omega, dx, 1)
    assert decomposition.delta_u == 0
    assert all(c == 0 for c in decomposition.coeffs.values())


def test_total_diff_u_rejects_non_flips():
    omega = sqrt_of(Fraction(1, 3))
    # x_1 of omega is 1, so it can only move by -1
    with pytest.raises(InvalidPerturbation):
        total_diff_u(omega, DigitDelta.from_mapping({1: 1}, 4), 1)


def test_partial_diff_h_at_flip():
    partial = partial_diff_h_at_flip(THIRD, THIRD_FLIP_5, 5, 10)
    assert partial.delta_u == 1
    assert partial.x_deltas.as_dict() == {5: 1, 8: -1, 10: -1}
    assert partial.x_side == Fraction(-1, 10)
    assert partial.quotient == Fraction(-1, 10)
    assert partial.agree


def test_partial_diff_h_at_flip_needs_a_change():
    with pytest.raises(InvalidPerturbation):
        partial_diff_h_at_flip(THIRD, THIRD_FLIP_5, 3, 10)


@pytest.mark.parametrize("r", [1, 2, 3, 7, 12])
def test_u_side_matches_x_side(r):
    pert = flip_bit_u(THIRD, r)
    for n in (4, 16, 64):
        assert partial_diff_h_at_flip(THIRD, pert, r, n).agree


def test_total_diff_u_single_flip_examples():
    omega = sqrt_of(Fraction(1, 3))
    dx = DigitDelta.from_mapping({3: 1}, 3)
    at_3 = total_diff_u(omega, dx, 3)
    assert at_3.delta_u == 1
    assert at_3.coeffs == {3: 1}
    at_1 = total_diff_u(omega, dx, 1)
    assert at_1.delta_u == 0
    assert at_1.coeffs == {3: 0}
