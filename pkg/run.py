"""tu-lab: exact digit calculus for square roots.

Usage:
    python run.py expand sqrt:1/3 --bits 10
    python run.py deps sqrt:1/3 --r 1
    python run.py deps 1/3 --n 1
    python run.py decompose 1/3 --flips 2,5 --n 10
    python run.py converge 1/3 --r 1..8 --n 2^2..2^12
    python run.py proposition 1/3 --flips 2,5,9 --n 2^2..2^12
    python run.py normality 2,3,5 --n 65536
    python run.py run request.json

Numbers are written "p/q", "sqrt:p/q" (the square root of p/q) or
"fracsqrt:s" (the fractional part of sqrt(s)). Index lists and grids are
comma-separated items "k", "a..b", "2^k" or "2^a..2^b"; "" is the empty list.

Exit status: 0 success, 1 domain error, 2 usage error, 3 internal invariant
violation. Results are cached under $TU_LAB_CACHE_DIR (default
~/.cache/tu_lab).
"""
import argparse
import os
import sys
from typing import List, Optional

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli import commands
from utils.constants import DEFAULT_OUT_DIR, DEFAULT_WORKERS, TOOL_VERSION, ExitStatus
from utils.errors import LabError
from utils.logger import LabLogger


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run.py",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"tu-lab {TOOL_VERSION}")
    parser.add_argument("--verbose", action="store_true", help="Log every category, digit extraction included")
    parser.add_argument("--quiet", action="store_true", help="No log lines on stderr")
    parser.add_argument("--log-file", default=None, help="Also append log lines to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p: argparse.ArgumentParser, out_default: Optional[str] = DEFAULT_OUT_DIR):
        p.add_argument("--out", default=out_default, help="Output directory for CSV/JSON/manifest")
        p.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="Processes for grid cells")
        p.add_argument("--json", action="store_true", help="Print the JSON artifact instead of a summary")

    p = sub.add_parser("expand", help="Print the first n bits of a number and f_n")
    p.add_argument("number")
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=commands.cmd_expand)

    p = sub.add_parser("deps", help="Dependency radius N(omega, r) or m(nu, n)")
    p.add_argument("number")
    p.add_argument("--r", type=int, default=None, help="u digits to pin; the number is omega")
    p.add_argument("--n", type=int, default=None, help="x digits to pin; the number is nu")
    p.add_argument("--search-limit", type=int, default=None)
    p.set_defaults(func=commands.cmd_deps)

    p = sub.add_parser("decompose", help="Split h_n(nu') - h_n(nu) into per-digit terms")
    p.add_argument("number")
    p.add_argument("--flips", required=True, help='u digits to flip, e.g. "2,5" or ""')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--scan-limit", type=int, default=None)
    p.set_defaults(func=commands.cmd_decompose)

    p = sub.add_parser("converge", help="Sweep partial differences of h_n over r and n")
    p.add_argument("number")
    p.add_argument("--r", required=True, help='u digits to flip, e.g. "1..8"')
    p.add_argument("--n", required=True, help='grid, e.g. "2^2..2^12"')
    add_output_flags(p)
    p.set_defaults(func=commands.cmd_converge)

    p = sub.add_parser("proposition", help="Drift of f_n(sqrt(eta)) under finitely many flips")
    p.add_argument("number")
    p.add_argument("--flips", required=True)
    p.add_argument("--n", required=True)
    add_output_flags(p)
    p.set_defaults(func=commands.cmd_proposition)

    p = sub.add_parser("normality", help="Digit frequencies of frac(sqrt(s))")
    p.add_argument("s_values", help='non-square integers, e.g. "2,3,5"')
    p.add_argument("--n", required=True, help="largest n (dyadic grid up to it) or an explicit grid")
    add_output_flags(p)
    p.set_defaults(func=commands.cmd_normality)

    p = sub.add_parser("run", help="Run a JSON experiment request")
    p.add_argument("request")
    add_output_flags(p, out_default=None)
    p.set_defaults(func=commands.cmd_run)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    LabLogger.configure(verbose=args.verbose, quiet=args.quiet, log_file=args.log_file)
    try:
        return int(args.func(args))
    except LabError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return int(e.exit_code)
    except ValueError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return int(ExitStatus.USAGE_ERROR)
    finally:
        LabLogger.close()


if __name__ == "__main__":
    sys.exit(main())
