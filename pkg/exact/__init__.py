from .isqrt import isqrt, is_square_int, is_square_rational, rational_sqrt
from .reals import (
    ExactReal, QuadExt, Quad, Rational, SqrtOf,
    add_signed_dyadic, cmp_dyadic, describe, floor_scaled, floor_scaled_bisect, frac_sqrt,
    in_unit_interval, is_dyadic, quad, rational, sign, sqrt_of, square
)
