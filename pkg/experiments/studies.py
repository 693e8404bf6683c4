"""Batch studies over the digit calculus.

- sweep_partial_diff: partial differences of h_n with respect to one flipped
  u digit, over a grid of n (their limit in n is 0).
- proposition_drift: f_n(sqrt(eta_1)) - f_n(sqrt(eta)) for eta_1 agreeing with
  eta at all but finitely many digits.
- normality_scan: digit frequencies of frac(sqrt(s)).

Grid cells are independent, so sweeps can fan out over a process pool.
"""
from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from calculus.differences import QuotientContext, partial_quotient, partial_term_h
from calculus.digits import bit_at, flip_bit_u, flip_bits, prefix_bits
from exact.reals import ExactReal, cmp_dyadic, frac_sqrt, is_dyadic, sqrt_of
from experiments.statistics import BitStatistics, bit_statistics, running_frequencies
from utils.constants import DEFAULT_WORKERS, TOOL_VERSION, Ordering
from utils.errors import DyadicBoundary, OutOfUnitInterval
from utils.serialization import canonical


@dataclass
class SweepTable:
    nu: str
    r_values: List[int]
    n_grid: List[int]
    cells: Dict[Tuple[int, int], Fraction]
    manifest: Dict[str, str] = field(default_factory=dict)

    def row(self, r: int) -> List[Fraction]:
        return [self.cells[(r, n)] for n in self.n_grid]


@dataclass
class LimitSeries:
    n_grid: List[int]
    values: List[Fraction]
    label: str
    stats: Optional[BitStatistics] = None

    def __post_init__(self):
        if len(self.n_grid) != len(self.values):
            raise ValueError(f"{len(self.n_grid)} grid points but {len(self.values)} values")


def dyadic_grid(n: int) -> List[int]:
    if n < 1:
        raise ValueError(f"grid needs a positive bound, got {n}")
    grid = []
    k = 1
    while k <= n:
        grid.append(k)
        k <<= 1
    if grid[-1] != n:
        grid.append(n)
    return grid


def require_open_non_dyadic(x: ExactReal, name: str = "nu"):
    if cmp_dyadic(x, 0) != Ordering.GT or cmp_dyadic(x, 1) != Ordering.LT:
        raise OutOfUnitInterval(f"{name} = {x} is not in (0, 1)")
    if is_dyadic(x):
        raise DyadicBoundary(f"{name} = {x} is dyadic and has two expansions")


def _sweep_cell(task: Tuple[ExactReal, int, int]) -> Tuple[Tuple[int, int], Fraction]:
    nu, r, n = task
    pert = flip_bit_u(nu, r)
    delta_r = bit_at(pert, r) - bit_at(nu, r)
    term = partial_term_h(nu, pert, r, n)
    return (r, n), partial_quotient(term, delta_r, QuotientContext(nu, pert, r, n))


def _run_cells(tasks: List[tuple], worker, workers: int) -> List:
    if workers <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, tasks))


def sweep_partial_diff(nu: ExactReal, r_values: Iterable[int], n_grid: Iterable[int],
                       workers: int = DEFAULT_WORKERS) -> SweepTable:
    require_open_non_dyadic(nu)
    r_values, n_grid = list(r_values), list(n_grid)
    tasks = [(nu, r, n) for r in r_values for n in n_grid]
    cells = dict(_run_cells(tasks, _sweep_cell, workers))

    fingerprint = canonical({"nu": str(nu), "r_values": r_values, "n_grid": n_grid})
    manifest = {
        "input_hash": hashlib.sha256(fingerprint.encode("utf-8")).hexdigest(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "tool_version": TOOL_VERSION,
    }
    return SweepTable(str(nu), r_values, n_grid, cells, manifest)


def proposition_drift(eta: ExactReal, flips: Iterable[int], n_grid: Iterable[int]) -> LimitSeries:
    require_open_non_dyadic(eta, "eta")
    flips, n_grid = sorted(set(flips)), list(n_grid)
    eta_1 = flip_bits(eta, flips)
    horizon = max(n_grid)
    base = running_frequencies(prefix_bits(sqrt_of(eta), horizon), n_grid)
    moved = running_frequencies(prefix_bits(sqrt_of(eta_1), horizon), n_grid)
    values = [b1 - b0 for b0, b1 in zip(base, moved)]
    label = f"f_n(sqrt({eta_1})) - f_n(sqrt({eta}))"
    return LimitSeries(n_grid, values, label)


def normality_scan(s_values: Iterable[int], n: int,
                   n_grid: Optional[Sequence[int]] = None) -> List[LimitSeries]:
    grid = list(n_grid) if n_grid else dyadic_grid(n)
    horizon = max(grid)
    out = []
    for s in s_values:
        prefix = prefix_bits(frac_sqrt(s), horizon)
        out.append(LimitSeries(grid, running_frequencies(prefix, grid),
                               f"f_n(frac(sqrt({s})))", bit_statistics(prefix)))
    return out
