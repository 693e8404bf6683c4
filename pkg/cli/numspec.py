"""Mini-grammars for command-line arguments.

Numbers:  "p/q" (or "p"), "sqrt:p/q" for sqrt(p/q), "fracsqrt:s" for frac(sqrt(s)).
Indices:  comma-separated items, each "k", "a..b", "2^k" or "2^a..2^b";
          the empty string is the empty list.
"""
import re
from fractions import Fraction
from typing import Any, Dict, List

from exact.reals import ExactReal, frac_sqrt, rational, sqrt_of
from utils.errors import UsageError
from utils.serialization import rat_to_json

_RATIO = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")
_POWER = re.compile(r"^2\^(\d+)$")


def _ratio(text: str) -> Fraction:
    m = _RATIO.match(text)
    if not m:
        raise UsageError(f"not a rational p/q: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise UsageError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def _split_number(spec: str):
    prefix, sep, rest = spec.strip().partition(":")
    if not sep:
        return "ratio", spec
    if prefix == "sqrt":
        return "sqrt", rest
    if prefix == "fracsqrt":
        if not rest.strip().isdigit():
            raise UsageError(f"fracsqrt needs a positive integer, got {rest!r}")
        return "fracsqrt", rest
    raise UsageError(f"unknown number form {prefix!r} in {spec!r}; use p/q, sqrt:p/q or fracsqrt:s")


def parse_number(spec: str) -> ExactReal:
    form, body = _split_number(spec)
    if form == "sqrt":
        return sqrt_of(_ratio(body))
    if form == "fracsqrt":
        return frac_sqrt(int(body))
    return rational(_ratio(body))


def number_request_json(spec: str) -> Dict[str, Any]:
    """The request-schema form of a number spec."""
    form, body = _split_number(spec)
    if form == "sqrt":
        return {"sqrt_of": rat_to_json(_ratio(body))}
    if form == "fracsqrt":
        return {"sqrt_of": int(body)}
    return rat_to_json(_ratio(body))


def _index(text: str) -> int:
    m = _POWER.match(text)
    if m:
        return 1 << int(m.group(1))
    if not text.isdigit():
        raise UsageError(f"not a non-negative integer: {text!r}")
    return int(text)


def _item(text: str) -> List[int]:
    if ".." not in text:
        return [_index(text)]
    lo_text, _, hi_text = text.partition("..")
    lo, hi = _index(lo_text.strip()), _index(hi_text.strip())
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    lo_pow, hi_pow = _POWER.match(lo_text.strip()), _POWER.match(hi_text.strip())
    if lo_pow and hi_pow:
        return [1 << k for k in range(int(lo_pow.group(1)), int(hi_pow.group(1)) + 1)]
    if lo_pow or hi_pow:
        raise UsageError(f"mix of power and plain bounds in {text!r}")
    return list(range(lo, hi + 1))


def parse_index_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise UsageError(f"empty item in {text!r}")
        values.extend(_item(part))
    if any(v < 1 for v in values):
        raise UsageError(f"indices are 1-based: {text!r}")
    return sorted(set(values))


def parse_grid(text: str) -> List[int]:
    grid = parse_index_list(text)
    if not grid:
        raise UsageError("the n grid must not be empty")
    return grid
