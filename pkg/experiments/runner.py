"""Runs validated experiment requests and persists their results.

Each request is keyed by the sha256 of its canonical JSON. A result payload
lives in the cache under that key; output files are
<kind>-<key12>.csv, <kind>-<key12>.json and <kind>-<key12>.manifest.json in
the request's out_dir. All files are written to a temporary name and then
renamed into place.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from experiments.request_schema import ExperimentRequest, validate_request
from experiments.statistics import decay_exponent, is_eventually_decreasing
from experiments.studies import (
    LimitSeries, SweepTable, normality_scan, proposition_drift, sweep_partial_diff
)
from utils.constants import (
    CSV_COLUMNS, DEFAULT_WORKERS, TOOL_VERSION, ExperimentKind, cache_dir
)
from utils.errors import IoError
from utils.logger import logger
from utils.serialization import decimal_str, dumps, rat_from_json, rat_to_json

# Reference grid point for the "smaller than at n = 64" decay check.
DECAY_REFERENCE_N = 64
DRIFT_CHECK_START = 256


def atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except OSError as e:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise IoError(f"could not write {path}: {e}") from e


class ResultCache:
    """Result payloads on disk, one JSON file per request key."""

    def __init__(self, root: Optional[Path] = None):
        self.root = Path(root) if root is not None else cache_dir()

    def path_for(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def load(self, key: str) -> Optional[Dict[str, Any]]:
        path = self.path_for(key)
        if not path.exists():
            logger.cache_miss(key)
            return None
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            logger.cache_miss(key)
            return None
        if payload.get("key") != key:
            logger.cache_miss(key)
            return None
        logger.cache_hit(key)
        return payload

    def store(self, key: str, payload: Dict[str, Any]):
        path = self.path_for(key)
        atomic_write(path, dumps(payload))
        logger.cache_stored(key, str(path))


@dataclass
class ResultSet:
    request: ExperimentRequest
    payload: Dict[str, Any]
    manifest: Dict[str, Any]
    csv_path: Path
    json_path: Path
    manifest_path: Path
    cache_hit: bool = False

    @property
    def summary(self) -> Dict[str, Any]:
        return self.payload["summary"]

    def values(self) -> List[Fraction]:
        return [rat_from_json(row["value"]) for row in self.payload["rows"]]


def _value_row(value: Fraction, **coords) -> Dict[str, Any]:
    return {**coords, "value": rat_to_json(value)}


def _max_abs_at(rows: List[Dict[str, Any]], n: int) -> Fraction:
    return max((abs(rat_from_json(row["value"])) for row in rows if row["n"] == n),
               default=Fraction(0))


def _float_or_none(x: Optional[float]) -> Optional[str]:
    return None if x is None else decimal_str(x)


def _sweep_payload(table: SweepTable) -> Dict[str, Any]:
    rows = [_value_row(table.cells[(r, n)], r=r, n=n) for r in table.r_values for n in table.n_grid]
    largest = max(table.n_grid)
    worst_per_n = [max(abs(table.cells[(r, n)]) for r in table.r_values) for n in table.n_grid]

    reference = DECAY_REFERENCE_N if DECAY_REFERENCE_N in table.n_grid else min(table.n_grid)
    checked = [r for r in table.r_values if table.cells[(r, reference)] != 0]
    shrunk = [r for r in checked if abs(table.cells[(r, largest)]) < abs(table.cells[(r, reference)])]

    summary = {
        "largest_n": largest,
        "max_abs_at_largest_n": rat_to_json(_max_abs_at(rows, largest)),
        "decay_exponent": _float_or_none(decay_exponent(table.n_grid, worst_per_n)),
        "reference_n": reference,
        "rows_checked": checked,
        "rows_shrunk": shrunk,
    }
    return {"rows": rows, "summary": summary}


def _proposition_payload(series: LimitSeries) -> Dict[str, Any]:
    rows = [_value_row(v, n=n) for n, v in zip(series.n_grid, series.values)]
    largest = max(series.n_grid)
    start = DRIFT_CHECK_START if DRIFT_CHECK_START in series.n_grid else min(series.n_grid)
    summary = {
        "label": series.label,
        "largest_n": largest,
        "max_abs_at_largest_n": rat_to_json(_max_abs_at(rows, largest)),
        "decay_exponent": _float_or_none(decay_exponent(series.n_grid, series.values)),
        "decreasing_from": start,
        "eventually_decreasing": is_eventually_decreasing(series.n_grid, series.values, start),
    }
    return {"rows": rows, "summary": summary}


def _normality_payload(req: ExperimentRequest, scans: List[LimitSeries]) -> Dict[str, Any]:
    rows = []
    stats = {}
    half = Fraction(1, 2)
    for s, series in zip(req.indices, scans):
        rows.extend(_value_row(v, s=s, n=n) for n, v in zip(series.n_grid, series.values))
        st = series.stats
        stats[str(s)] = {
            "ones": st.ones,
            "z_score": decimal_str(st.z_score),
            "pair_counts": st.pair_counts,
            "longest_run": st.longest_run,
        }
    largest = max(req.n_grid)
    deviation = max(abs(rat_from_json(row["value"]) - half) for row in rows if row["n"] == largest)
    summary = {
        "largest_n": largest,
        "max_abs_at_largest_n": rat_to_json(deviation),
        "stats": stats,
    }
    return {"rows": rows, "summary": summary}


def compute_payload(req: ExperimentRequest, workers: int = DEFAULT_WORKERS) -> Dict[str, Any]:
    if req.kind == ExperimentKind.SWEEP:
        body = _sweep_payload(sweep_partial_diff(req.number, req.indices, req.n_grid, workers))
    elif req.kind == ExperimentKind.PROPOSITION:
        body = _proposition_payload(proposition_drift(req.number, req.indices, req.n_grid))
    else:
        body = _normality_payload(req, normality_scan(req.indices, max(req.n_grid), req.n_grid))
    return {"kind": req.kind, "key": req.key, "request": req.canonical(), **body}


def csv_text(kind: str, payload: Dict[str, Any]) -> str:
    columns = CSV_COLUMNS[kind]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    coords = [c for c in columns if c in ("r", "s", "n")]
    for row in payload["rows"]:
        value = rat_from_json(row["value"])
        writer.writerow([row[c] for c in coords]
                        + [str(value.numerator), str(value.denominator), decimal_str(value)])
    return buf.getvalue()


def run_experiment(request: Any, workers: int = DEFAULT_WORKERS,
                   cache: Optional[ResultCache] = None) -> ResultSet:
    req = request if isinstance(request, ExperimentRequest) else validate_request(request)
    cache = cache if cache is not None else ResultCache()
    started = time.monotonic()

    cells = len(req.n_grid) * (1 if req.kind == ExperimentKind.PROPOSITION else len(req.indices))
    logger.experiment_started(req.kind, req.key, cells, workers)

    payload = cache.load(req.key)
    cache_hit = payload is not None
    if not cache_hit:
        payload = compute_payload(req, workers)
        cache.store(req.key, payload)

    stem = f"{req.kind}-{req.key[:12]}"
    out = Path(req.out_dir)
    csv_path, json_path = out / f"{stem}.csv", out / f"{stem}.json"
    manifest_path = out / f"{stem}.manifest.json"

    atomic_write(csv_path, csv_text(req.kind, payload))
    atomic_write(json_path, dumps(payload))

    wall_time = time.monotonic() - started
    manifest = {
        "request_hash": req.key,
        "request": req.canonical(),
        "tool_version": TOOL_VERSION,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "wall_time_s": round(wall_time, 6),
        "cache_hit": cache_hit,
        "cache_hits": 1 if cache_hit else 0,
        "workers": workers,
        "files": {"csv": csv_path.name, "json": json_path.name},
    }
    atomic_write(manifest_path, dumps(manifest))

    for path in (csv_path, json_path, manifest_path):
        logger.artifact_written(str(path))
    logger.experiment_finished(req.kind, req.key, wall_time)
    return ResultSet(req, payload, manifest, csv_path, json_path, manifest_path, cache_hit)
