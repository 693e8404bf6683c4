import os
from enum import IntEnum
from pathlib import Path

TOOL_VERSION = "0.3.0"

DEFAULT_SCAN_MARGIN = 64

SEARCH_LIMIT_SLOPE = 4
SEARCH_LIMIT_OFFSET = 64

DECIMAL_DIGITS = 12

DEFAULT_WORKERS = 1

CACHE_DIR_ENV = "TU_LAB_CACHE_DIR"
DEFAULT_CACHE_DIR = Path.home() / ".cache" / "tu_lab"
DEFAULT_OUT_DIR = "results"

# Estimates for Quad values are corrected by exact comparisons; more than this
# many steps means the estimate itself is wrong.
MAX_FLOOR_CORRECTIONS = 4

# Below this bit length isqrt starts Newton from a power of two directly.
ISQRT_DIRECT_BITS = 128


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Source:
    BASE = "base"
    PERT = "pert"


class ExperimentKind:
    SWEEP = "sweep"
    PROPOSITION = "proposition"
    NORMALITY = "normality"

    ALL = (SWEEP, PROPOSITION, NORMALITY)


class ExitStatus:
    SUCCESS = 0
    DOMAIN_ERROR = 1
    USAGE_ERROR = 2
    INTERNAL_ERROR = 3


CSV_COLUMNS = {
    ExperimentKind.SWEEP: ["r", "n", "quotient_num", "quotient_den", "quotient_decimal"],
    ExperimentKind.PROPOSITION: ["n", "diff_num", "diff_den", "diff_decimal"],
    ExperimentKind.NORMALITY: ["s", "n", "freq_num", "freq_den", "freq_decimal"],
}


def default_search_limit(k: int) -> int:
    return SEARCH_LIMIT_SLOPE * k + SEARCH_LIMIT_OFFSET


def cache_dir() -> Path:
    override = os.environ.get(CACHE_DIR_ENV)
    if override:
        return Path(override)
    return DEFAULT_CACHE_DIR
