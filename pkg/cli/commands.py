"""Subcommand handlers. Each one prints to stdout and returns an exit status;
errors propagate as LabError and are mapped to exit codes by run.py."""
import argparse
import json
from pathlib import Path

from calculus.dependency import dep_radius_N, dep_radius_m
from calculus.differences import total_diff_h
from calculus.digits import flip_bits, freq_f_n, prefix_bits
from cli.numspec import number_request_json, parse_grid, parse_index_list, parse_number
from exact.reals import describe
from experiments.runner import ResultSet, run_experiment
from experiments.studies import dyadic_grid
from utils.constants import ExitStatus, ExperimentKind
from utils.errors import InvalidRequest, IoError, UsageError
from utils.serialization import decimal_str, dumps, rat_from_json, rat_to_json

SUMMARY_LABELS = {
    ExperimentKind.SWEEP: "max|quotient|",
    ExperimentKind.PROPOSITION: "max|diff|",
    ExperimentKind.NORMALITY: "max|f_n - 1/2|",
}


def cmd_expand(args: argparse.Namespace) -> int:
    x = parse_number(args.number)
    prefix = prefix_bits(x, args.bits)
    freq = freq_f_n(prefix)
    if args.json:
        print(dumps({"number": describe(x), "n": prefix.n, "bits": str(prefix),
                     "f_n": rat_to_json(freq)}), end="")
    else:
        print(f"{prefix}  f_{prefix.n} = {freq}")
    return ExitStatus.SUCCESS


def cmd_deps(args: argparse.Namespace) -> int:
    x = parse_number(args.number)
    if (args.r is None) == (args.n is None):
        raise UsageError("deps needs exactly one of --r or --n")
    if args.r is not None:
        result = dep_radius_N(x, args.r, args.search_limit)
    else:
        result = dep_radius_m(x, args.n, args.search_limit)
    print(dumps(result.to_json()), end="")
    return ExitStatus.SUCCESS


def cmd_decompose(args: argparse.Namespace) -> int:
    nu = parse_number(args.number)
    flips = parse_index_list(args.flips)
    report = total_diff_h(nu, flip_bits(nu, flips), args.n, args.scan_limit)
    print(dumps(report.to_json()), end="")
    return ExitStatus.SUCCESS


def _report(result: ResultSet, as_json: bool) -> int:
    if as_json:
        print(dumps(result.payload), end="")
        return ExitStatus.SUCCESS

    print(result.csv_path)
    print(result.json_path)
    print(result.manifest_path)
    summary = result.summary
    worst = rat_from_json(summary["max_abs_at_largest_n"])
    label = SUMMARY_LABELS[result.request.kind]
    line = f"{label}@{summary['largest_n']} = {decimal_str(worst)} ({worst})"
    if summary.get("decay_exponent") is not None:
        line += f"  decay exponent {summary['decay_exponent']}"
    print(line)
    return ExitStatus.SUCCESS


def cmd_converge(args: argparse.Namespace) -> int:
    request = {
        "kind": ExperimentKind.SWEEP,
        "nu": number_request_json(args.number),
        "r_values": parse_index_list(args.r),
        "n_grid": parse_grid(args.n),
        "out_dir": args.out,
    }
    return _report(run_experiment(request, workers=args.workers), args.json)


def cmd_proposition(args: argparse.Namespace) -> int:
    request = {
        "kind": ExperimentKind.PROPOSITION,
        "eta": number_request_json(args.number),
        "flips": parse_index_list(args.flips),
        "n_grid": parse_grid(args.n),
        "out_dir": args.out,
    }
    return _report(run_experiment(request, workers=args.workers), args.json)


def cmd_normality(args: argparse.Namespace) -> int:
    grid = parse_grid(args.n)
    if len(grid) == 1:
        grid = dyadic_grid(grid[0])
    request = {
        "kind": ExperimentKind.NORMALITY,
        "s_values": parse_index_list(args.s_values),
        "n_grid": grid,
        "out_dir": args.out,
    }
    return _report(run_experiment(request, workers=args.workers), args.json)


def cmd_run(args: argparse.Namespace) -> int:
    path = Path(args.request)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise IoError(f"could not read {path}: {e}") from e
    except ValueError as e:
        raise InvalidRequest(f"{path} is not valid JSON: {e}") from e
    if args.out is not None and isinstance(raw, dict):
        raw["out_dir"] = args.out
    return _report(run_experiment(raw, workers=args.workers), args.json)
