from fractions import Fraction
from typing import Optional

from utils.constants import ISQRT_DIRECT_BITS


def isqrt(n: int) -> int:
    """floor(sqrt(n)) for a nonnegative integer of any size.

    Newton iteration from above. Large inputs take their starting point from
    the root of their top half, so only a couple of full-width divisions run.
    """
    if n < 0:
        raise ValueError("isqrt() argument must be nonnegative")
    if n < 2:
        return n

    bits = n.bit_length()
    if bits <= ISQRT_DIRECT_BITS:
        x = 1 << ((bits + 1) // 2)
    else:
        shift = bits // 4
        x = (isqrt(n >> (2 * shift)) + 1) << shift

    while True:
        y = (x + n // x) >> 1
        if y >= x:
            return x
        x = y


def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    root = isqrt(n)
    return root * root == n


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    num_root = isqrt(q.numerator)
    if num_root * num_root != q.numerator:
        return None
    den_root = isqrt(q.denominator)
    if den_root * den_root != q.denominator:
        return None
    return Fraction(num_root, den_root)


def is_square_rational(q: Fraction) -> bool:
    return rational_sqrt(q) is not None
