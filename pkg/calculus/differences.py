"""Partial and total differences of the digit averages f_n and h_n.

A change between a base point and a perturbed point is split into
step-by-step changes of single digits. The i-th step compares two hybrid
points: both take their first i - 1 digits from the base point and their
digits after i from the perturbed point, and they differ only in digit i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

from calculus.dependency import cutoff_for_sum, dep_radius_N
from calculus.digits import (
    DigitDelta, bit_at, flip_bits, h_n, induced_deltas
)
from exact.reals import ExactReal, add_signed_dyadic, cmp_dyadic, sqrt_of, square
from utils.constants import DEFAULT_SCAN_MARGIN, Ordering, Source
from utils.errors import (
    CutoffExceeded, DyadicBoundary, HorizonTooShort, InvalidPerturbation,
    OutOfUnitInterval, SearchLimitExceeded, TelescopingMismatch
)
from utils.logger import logger
from utils.serialization import rat_to_json


@dataclass(frozen=True)
class QuotientContext:
    base: ExactReal
    pert: ExactReal
    i: int
    n: int


@dataclass
class DiffReport:
    n: int
    terms: Dict[int, Fraction]
    quotients: Dict[int, Fraction]
    total: Fraction
    lhs_direct: Fraction
    observed_cutoff: int
    predicted_cutoff: int

    @property
    def nonzero_terms(self) -> Dict[int, Fraction]:
        return {i: t for i, t in self.terms.items() if t != 0}

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "terms": {str(i): rat_to_json(t) for i, t in sorted(self.terms.items())},
            "quotients": {str(i): rat_to_json(q) for i, q in sorted(self.quotients.items())},
            "total": rat_to_json(self.total),
            "lhs_direct": rat_to_json(self.lhs_direct),
            "observed_cutoff": self.observed_cutoff,
            "predicted_cutoff": self.predicted_cutoff,
        }


@dataclass
class UDecomposition:
    r: int
    coeffs: Dict[int, Fraction]
    delta_u: int
    residual_check: bool
    radius: Optional[int] = None


@dataclass
class FlipPartial:
    r: int
    n: int
    delta_u: int
    x_deltas: DigitDelta
    x_side: Fraction
    quotient: Fraction
    agree: bool = field(default=False)


def partial_diff_f(j: int, n: int) -> Fraction:
    """Partial difference of f_n with respect to x_j."""
    if j < 1 or n < 1:
        raise ValueError(f"indices are 1-based, got j={j}, n={n}")
    return Fraction(1, n) if j <= n else Fraction(0)


def total_diff_f(dx: DigitDelta, n: int) -> Fraction:
    if dx.horizon < n:
        raise HorizonTooShort(f"deltas only reach index {dx.horizon}, need {n}")
    return Fraction(dx.total(n), n)


def _shift_to_base(pert: ExactReal, deltas: DigitDelta, upto: int) -> ExactReal:
    adjust = sum((Fraction(d, 1 << j) for j, d in deltas.items if j <= upto), Fraction(0))
    if adjust == 0:
        return pert
    return add_signed_dyadic(pert, -adjust)


def hybrid_point(base: ExactReal, pert: ExactReal, i: int, include_bit_i_from: str) -> ExactReal:
    """Point with leading digits from base and the remaining digits from pert.

    Digit i itself comes from the point named by include_bit_i_from.
    """
    if include_bit_i_from not in (Source.BASE, Source.PERT):
        raise ValueError(f"unknown digit source {include_bit_i_from!r}")
    upto = i if include_bit_i_from == Source.BASE else i - 1
    if upto <= 0:
        return pert
    return _shift_to_base(pert, induced_deltas(base, pert, upto), upto)


def _hybrid_pair(pert: ExactReal, deltas: DigitDelta, i: int):
    at_pert = _shift_to_base(pert, deltas, i - 1)
    delta_i = deltas.get(i)
    if delta_i == 0:
        return at_pert, at_pert, 0
    return at_pert, add_signed_dyadic(at_pert, Fraction(-delta_i, 1 << i)), delta_i


def partial_term_h(base: ExactReal, pert: ExactReal, i: int, n: int) -> Fraction:
    deltas = induced_deltas(base, pert, i)
    at_pert, at_base, delta_i = _hybrid_pair(pert, deltas, i)
    if delta_i == 0:
        return Fraction(0)
    return h_n(at_pert, n) - h_n(at_base, n)


def _zero_case_quotient(ctx: QuotientContext) -> Fraction:
    # 0/0: evaluate the step as though the digit were 0 and its change +1
    deltas = induced_deltas(ctx.base, ctx.pert, ctx.i)
    point = _shift_to_base(ctx.pert, deltas, ctx.i)
    step = Fraction(1, 1 << ctx.i)
    with_zero = point if bit_at(point, ctx.i) == 0 else add_signed_dyadic(point, -step)
    with_one = add_signed_dyadic(with_zero, step)
    return h_n(with_one, ctx.n) - h_n(with_zero, ctx.n)


def partial_quotient(term: Fraction, delta_u_i: int,
                     zero_case: Optional[QuotientContext] = None) -> Fraction:
    if delta_u_i not in (-1, 0, 1):
        raise ValueError(f"digit change must be -1, 0 or +1, got {delta_u_i}")
    if delta_u_i != 0:
        return term * delta_u_i
    if zero_case is None:
        raise ValueError("a zero digit change needs a recomputation context")
    return _zero_case_quotient(zero_case)


def total_diff_h(base: ExactReal, pert: ExactReal, n: int,
                 scan_limit: Optional[int] = None) -> DiffReport:
    """Decompose h_n(pert) - h_n(base) into per-digit partial differences."""
    predicted = cutoff_for_sum(base, n)
    limit = predicted + DEFAULT_SCAN_MARGIN if scan_limit is None else scan_limit
    if limit < predicted:
        raise ValueError(f"scan limit {limit} is below the predicted cutoff {predicted}")

    deltas = induced_deltas(base, pert, limit)
    terms: Dict[int, Fraction] = {}
    quotients: Dict[int, Fraction] = {}
    for i in range(1, limit + 1):
        at_pert, at_base, delta_i = _hybrid_pair(pert, deltas, i)
        if delta_i == 0:
            terms[i] = Fraction(0)
        else:
            terms[i] = h_n(at_pert, n) - h_n(at_base, n)
        quotients[i] = partial_quotient(terms[i], delta_i, QuotientContext(base, pert, i, n))

    nonzero = [i for i, t in terms.items() if t != 0]
    observed = max(nonzero) if nonzero else 0
    total = sum(terms.values(), Fraction(0))
    lhs_direct = h_n(pert, n) - h_n(base, n)

    if observed > predicted:
        logger.decomposition_broken("cutoff", f"term {observed} beyond predicted {predicted}")
        raise CutoffExceeded(f"nonzero term at {observed} beyond predicted cutoff {predicted}")
    if total != lhs_direct:
        logger.decomposition_broken("telescoping", f"{total} != {lhs_direct}")
        raise TelescopingMismatch(f"sum of terms {total} differs from direct change {lhs_direct}")

    logger.decomposition_done(n, len(nonzero), observed, predicted)
    return DiffReport(n, terms, quotients, total, lhs_direct, observed, predicted)


def total_diff_u(omega_base: ExactReal, dx: DigitDelta, r: int) -> UDecomposition:
    """Split the change of u_r caused by x-digit flips into per-flip steps."""
    if cmp_dyadic(omega_base, 0) != Ordering.GT or cmp_dyadic(omega_base, 1) != Ordering.LT:
        raise OutOfUnitInterval(f"{omega_base} is not in (0, 1)")
    for j, d in dx.items:
        if d != 1 - 2 * bit_at(omega_base, j):
            raise InvalidPerturbation(f"delta {d:+d} at x_{j} is not a flip of {omega_base}")

    omega_pert = flip_bits(omega_base, dx.support)

    def u_r(w: ExactReal) -> int:
        return bit_at(square(w), r)

    coeffs: Dict[int, Fraction] = {}
    for j, d in dx.items:
        before = _shift_to_base(omega_pert, dx, j - 1)
        after = add_signed_dyadic(before, Fraction(-d, 1 << j))
        coeffs[j] = Fraction(u_r(before) - u_r(after)) * d

    delta_u = u_r(omega_pert) - u_r(omega_base)
    residual_check = sum((coeffs[j] * d for j, d in dx.items), Fraction(0)) == delta_u

    try:
        radius = dep_radius_N(omega_base, r).radius
    except (DyadicBoundary, SearchLimitExceeded):
        radius = None
    if radius is not None:
        beyond = [j for j, c in coeffs.items() if c != 0 and j > radius]
        if beyond:
            raise CutoffExceeded(f"x_{beyond[0]} moves u_{r} beyond N = {radius}")

    return UDecomposition(r, coeffs, delta_u, residual_check, radius)


def partial_diff_h_at_flip(base: ExactReal, pert: ExactReal, r: int, n: int) -> FlipPartial:
    """Read the r-th partial difference of h_n off the x digits.

    The two hybrid points around r differ in u_r alone; their square roots
    differ in some x digits, and the partial difference is the signed average
    of those x-digit changes.
    """
    deltas = induced_deltas(base, pert, r)
    at_pert, at_base, delta_r = _hybrid_pair(pert, deltas, r)
    if delta_r == 0:
        raise InvalidPerturbation(f"u_{r} is unchanged between {base} and {pert}")

    x_deltas = induced_deltas(sqrt_of(at_base), sqrt_of(at_pert), n)
    x_side = total_diff_f(x_deltas, n)
    quotient = partial_quotient(h_n(at_pert, n) - h_n(at_base, n), delta_r)
    return FlipPartial(r, n, delta_r, x_deltas, x_side, quotient,
                       agree=quotient == delta_r * x_side)
