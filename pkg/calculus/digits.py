from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from exact.reals import (
    ExactReal, add_signed_dyadic, cmp_dyadic, floor_scaled, in_unit_interval, sqrt_of
)
from utils.constants import Ordering
from utils.errors import EmptyPrefix, OutOfUnitInterval


@dataclass(frozen=True)
class BitPrefix:
    """First n binary digits of a number in [0, 1), held as floor(2^n x)."""
    scaled: int
    n: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.scaled < (1 << self.n):
            raise ValueError(f"{self.scaled} is not an {self.n}-bit prefix")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> BitPrefix:
        scaled = 0
        for bit in bits:
            if bit not in (0, 1):
                raise ValueError(f"not a binary digit: {bit}")
            scaled = (scaled << 1) | bit
        return cls(scaled, len(bits))

    @property
    def value(self) -> Fraction:
        return Fraction(self.scaled, 1 << self.n)

    def bit(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"bit {i} outside 1..{self.n}")
        return (self.scaled >> (self.n - i)) & 1

    def ones(self) -> int:
        return bin(self.scaled).count("1")

    def __str__(self):
        if self.n == 0:
            return ""
        return format(self.scaled, f"0{self.n}b")


@dataclass(frozen=True)
class DigitDelta:
    """Per-index digit changes in {-1, +1}; absent indices mean 0."""
    items: Tuple[Tuple[int, int], ...]
    horizon: int

    def __post_init__(self):
        for index, delta in self.items:
            if delta not in (-1, 1):
                raise ValueError(f"delta at {index} must be +1 or -1, got {delta}")
            if not 1 <= index <= self.horizon:
                raise ValueError(f"index {index} outside 1..{self.horizon}")

    @classmethod
    def from_mapping(cls, deltas: Mapping[int, int], horizon: int) -> DigitDelta:
        items = tuple(sorted((int(i), int(d)) for i, d in deltas.items() if d != 0))
        return cls(items, horizon)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(index for index, _ in self.items)

    def get(self, index: int) -> int:
        for i, delta in self.items:
            if i == index:
                return delta
        return 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.items)

    def total(self, upto: int) -> int:
        return sum(delta for index, delta in self.items if index <= upto)

    def __len__(self):
        return len(self.items)


def prefix_bits(x: ExactReal, n: int) -> BitPrefix:
    return BitPrefix(floor_scaled(x, n), n)


def bit_at(x: ExactReal, i: int) -> int:
    if i < 1:
        raise ValueError(f"digits are 1-indexed, got {i}")
    return floor_scaled(x, i) & 1


def freq_f_n(prefix: BitPrefix) -> Fraction:
    if prefix.n == 0:
        raise EmptyPrefix("relative frequency of an empty prefix")
    return Fraction(prefix.ones(), prefix.n)


def f_n(omega: ExactReal, n: int) -> Fraction:
    return freq_f_n(prefix_bits(omega, n))


def h_n(nu: ExactReal, n: int) -> Fraction:
    """f_n of sqrt(nu): the digit average expressed through nu."""
    if not in_unit_interval(nu):
        raise OutOfUnitInterval(f"{nu} is not in [0, 1)")
    return freq_f_n(prefix_bits(sqrt_of(nu), n))


def flip_bit_u(nu: ExactReal, r: int) -> ExactReal:
    """Flip binary digit r of nu; no carry or borrow reaches other digits."""
    if cmp_dyadic(nu, 0) != Ordering.GT or cmp_dyadic(nu, 1) != Ordering.LT:
        raise OutOfUnitInterval(f"{nu} is not in (0, 1)")
    u_r = bit_at(nu, r)
    flipped = add_signed_dyadic(nu, Fraction(1 - 2 * u_r, 1 << r))
    if not in_unit_interval(flipped):
        raise OutOfUnitInterval(f"flipping bit {r} of {nu} leaves [0, 1)")
    return flipped


def flip_bits(x: ExactReal, indices: Iterable[int]) -> ExactReal:
    for index in sorted(set(indices)):
        x = flip_bit_u(x, index)
    return x


def induced_deltas(base: ExactReal, pert: ExactReal, horizon: int) -> DigitDelta:
    if horizon <= 0:
        return DigitDelta((), max(horizon, 0))
    kb = floor_scaled(base, horizon)
    kp = floor_scaled(pert, horizon)
    changed = kb ^ kp
    items = []
    while changed:
        low = changed & -changed
        shift = low.bit_length() - 1
        index = horizon - shift
        items.append((index, 1 if kp & low else -1))
        changed ^= low
    return DigitDelta(tuple(sorted(items)), horizon)
