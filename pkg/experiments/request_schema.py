"""Validation of experiment requests.

A request is a JSON object:

    {"kind": "sweep",       "nu":  <number>, "r_values": [...], "n_grid": [...], "out_dir": "..."}
    {"kind": "proposition", "eta": <number>, "flips":    [...], "n_grid": [...], "out_dir": "..."}
    {"kind": "normality",                    "s_values": [...], "n_grid": [...], "out_dir": "..."}

<number> is {"num": p, "den": q} for p/q, {"sqrt_of": s} for frac(sqrt(s)) with
integer s, or {"sqrt_of": {"num": p, "den": q}} for sqrt(p/q).
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from exact.reals import ExactReal, frac_sqrt, rational, sqrt_of
from experiments.studies import require_open_non_dyadic
from utils.constants import DEFAULT_OUT_DIR, ExitStatus, ExperimentKind
from utils.errors import InvalidRequest, LabError
from utils.serialization import canonical, rat_to_json

NUMBER_KEYS = {
    ExperimentKind.SWEEP: "nu",
    ExperimentKind.PROPOSITION: "eta",
    ExperimentKind.NORMALITY: None,
}

INDEX_KEYS = {
    ExperimentKind.SWEEP: "r_values",
    ExperimentKind.PROPOSITION: "flips",
    ExperimentKind.NORMALITY: "s_values",
}


@dataclass(frozen=True)
class ExperimentRequest:
    kind: str
    number: Optional[ExactReal]
    number_json: Optional[Dict[str, Any]]
    indices: Tuple[int, ...]
    n_grid: Tuple[int, ...]
    out_dir: str = DEFAULT_OUT_DIR

    def canonical(self) -> Dict[str, Any]:
        """Everything that determines the results; out_dir does not."""
        payload = {
            "kind": self.kind,
            INDEX_KEYS[self.kind]: list(self.indices),
            "n_grid": list(self.n_grid),
        }
        number_key = NUMBER_KEYS[self.kind]
        if number_key:
            payload[number_key] = self.number_json
        return payload

    @property
    def key(self) -> str:
        return hashlib.sha256(canonical(self.canonical()).encode("utf-8")).hexdigest()


def _as_int(value: Any, what: str) -> int:
    if isinstance(value, bool):
        raise InvalidRequest(f"{what} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise InvalidRequest(f"{what} must be an integer, got {value!r}")


def _as_fraction(raw: Any, what: str) -> Fraction:
    if not isinstance(raw, Mapping) or set(raw) != {"num", "den"}:
        raise InvalidRequest(f"{what} must be {{\"num\", \"den\"}}, got {raw!r}")
    num = _as_int(raw["num"], f"{what}.num")
    den = _as_int(raw["den"], f"{what}.den")
    if den <= 0:
        raise InvalidRequest(f"{what}.den must be positive, got {den}")
    return Fraction(num, den)


def parse_number(raw: Any, what: str) -> Tuple[ExactReal, Dict[str, Any]]:
    """Build the value a request names, plus its normalized JSON form."""
    if isinstance(raw, Mapping) and set(raw) == {"sqrt_of"}:
        inner = raw["sqrt_of"]
        if isinstance(inner, Mapping):
            q = _as_fraction(inner, f"{what}.sqrt_of")
            return _domain(lambda: sqrt_of(q), what), {"sqrt_of": rat_to_json(q)}
        s = _as_int(inner, f"{what}.sqrt_of")
        return _domain(lambda: frac_sqrt(s), what), {"sqrt_of": s}
    q = _as_fraction(raw, what)
    return rational(q), rat_to_json(q)


def _domain(build, what: str):
    try:
        return build()
    except LabError as e:
        raise InvalidRequest(f"{what}: {type(e).__name__}: {e}", ExitStatus.DOMAIN_ERROR) from e


def _int_list(raw: Any, what: str, minimum: int) -> List[int]:
    if not isinstance(raw, list):
        raise InvalidRequest(f"{what} must be a list, got {type(raw).__name__}")
    values = [_as_int(v, what) for v in raw]
    low = [v for v in values if v < minimum]
    if low:
        raise InvalidRequest(f"{what} entries must be >= {minimum}, got {low[0]}")
    return sorted(set(values))


def validate_request(raw: Any) -> ExperimentRequest:
    if not isinstance(raw, Mapping):
        raise InvalidRequest(f"request must be a JSON object, got {type(raw).__name__}")

    kind = raw.get("kind")
    if kind not in ExperimentKind.ALL:
        raise InvalidRequest(f"kind must be one of {', '.join(ExperimentKind.ALL)}, got {kind!r}")

    number_key, index_key = NUMBER_KEYS[kind], INDEX_KEYS[kind]
    allowed = {"kind", index_key, "n_grid", "out_dir"} | ({number_key} if number_key else set())
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise InvalidRequest(f"unknown field(s) for {kind}: {', '.join(unknown)}")
    missing = sorted(k for k in allowed - {"out_dir"} if k not in raw)
    if missing:
        raise InvalidRequest(f"missing field(s) for {kind}: {', '.join(missing)}")

    number, number_json = None, None
    if number_key:
        number, number_json = parse_number(raw[number_key], number_key)
        _domain(lambda: require_open_non_dyadic(number, number_key), number_key)

    indices = _int_list(raw[index_key], index_key, 1)
    if kind == ExperimentKind.SWEEP and not indices:
        raise InvalidRequest("r_values must not be empty")
    if kind == ExperimentKind.NORMALITY:
        if not indices:
            raise InvalidRequest("s_values must not be empty")
        for s in indices:
            _domain(lambda: frac_sqrt(s), f"s_values[{s}]")

    n_grid = _int_list(raw["n_grid"], "n_grid", 1)
    if not n_grid:
        raise InvalidRequest("n_grid must not be empty")

    out_dir = raw.get("out_dir", DEFAULT_OUT_DIR)
    if not isinstance(out_dir, str) or not out_dir:
        raise InvalidRequest(f"out_dir must be a non-empty path, got {out_dir!r}")

    return ExperimentRequest(kind, number, number_json, tuple(indices), tuple(n_grid), out_dir)
