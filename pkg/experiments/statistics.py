from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from calculus.digits import BitPrefix


@dataclass
class BitStatistics:
    n: int
    ones: int
    z_score: float
    pair_counts: List[int]
    longest_run: int


def bits_array(prefix: BitPrefix) -> np.ndarray:
    if prefix.n == 0:
        return np.zeros(0, dtype=np.uint8)
    width = (prefix.n + 7) // 8
    raw = np.frombuffer(prefix.scaled.to_bytes(width, "big"), dtype=np.uint8)
    return np.unpackbits(raw)[width * 8 - prefix.n:]


def running_frequencies(prefix: BitPrefix, grid: Sequence[int]) -> List[Fraction]:
    """f_k for every k in grid, read off one prefix with a cumulative sum."""
    counts = np.cumsum(bits_array(prefix), dtype=np.int64)
    out = []
    for k in grid:
        if not 1 <= k <= prefix.n:
            raise ValueError(f"grid point {k} outside 1..{prefix.n}")
        out.append(Fraction(int(counts[k - 1]), k))
    return out


def bit_statistics(prefix: BitPrefix) -> BitStatistics:
    bits = bits_array(prefix)
    n = int(bits.size)
    ones = int(bits.sum())
    z = (2 * ones - n) / np.sqrt(n) if n else 0.0

    if n >= 2:
        pairs = 2 * bits[:-1].astype(np.int64) + bits[1:]
        pair_counts = np.bincount(pairs, minlength=4).tolist()
    else:
        pair_counts = [0, 0, 0, 0]

    if n:
        edges = np.flatnonzero(np.diff(bits.astype(np.int8)) != 0)
        bounds = np.concatenate(([-1], edges, [n - 1]))
        longest = int(np.diff(bounds).max())
    else:
        longest = 0

    return BitStatistics(n, ones, float(z), [int(c) for c in pair_counts], longest)


def decay_exponent(n_grid: Sequence[int], values: Sequence[Fraction]) -> Optional[float]:
    """Least-squares slope of log|value| against log n over the nonzero cells."""
    points = [(n, abs(v)) for n, v in zip(n_grid, values) if v != 0]
    if len(points) < 2 or len({n for n, _ in points}) < 2:
        return None
    logs_n = np.log([float(n) for n, _ in points])
    logs_v = np.log([float(v) for _, v in points])
    slope, _ = np.polyfit(logs_n, logs_v, 1)
    return float(slope)


def is_eventually_decreasing(n_grid: Sequence[int], values: Sequence[Fraction],
                             start: int, allowance: int = 1) -> bool:
    """|value| non-increasing along the grid from start on, up to `allowance` rises."""
    tail = [abs(v) for n, v in zip(n_grid, values) if n >= start]
    rises = sum(1 for prev, cur in zip(tail, tail[1:]) if cur > prev)
    return rises <= allowance
