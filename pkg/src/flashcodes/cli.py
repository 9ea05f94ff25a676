"""Command-line front end: verify, simulate, bounds, trace.

Machine-readable output is byte-stable for fixed inputs and seeds: the
JSON record carries ``"ms": null`` and CSV rows contain no timing, while
human-readable output shows measured wall time.

Exit codes: 0 pass, 1 verification failure, 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .basic import BasicCode, make_basic
from .bounds import CSV_HEADER, bound_report, thm1_upper
from .core import ERASE, FlashCode, format_bits, format_state, initial_state
from .enhanced import EnhancedCode, VirtualizedCode, make_enhanced
from .oracle import (
    ContractViolation,
    SearchBudgetExceeded,
    exact_guarantee,
    random_walk,
)
from .twobit import TwoBitCode

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _add_code_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--code",
        required=True,
        choices=("twobit", "basic", "enhanced"),
        help="construction to instantiate",
    )
    parser.add_argument("--q", type=int, required=True, help="cell levels")
    parser.add_argument("--n", type=int, help="cell count (twobit)")
    parser.add_argument(
        "--dims",
        help="comma-separated box dimensions (basic); with even q each "
        "listed cell is realized by a physical cell pair",
    )
    parser.add_argument("--k", type=int, help="stored bits, a power of two (enhanced)")
    parser.add_argument(
        "--nd", type=int, help="blocks along the last dimension (enhanced)"
    )


def build_code(args: argparse.Namespace) -> FlashCode:
    try:
        if args.code == "twobit":
            if args.n is None:
                raise UsageError("twobit needs --n")
            return TwoBitCode(args.n, args.q)
        if args.code == "basic":
            if not args.dims:
                raise UsageError("basic needs --dims")
            dims = tuple(int(tok) for tok in args.dims.split(","))
            return make_basic(dims, args.q)
        if args.k is None or args.nd is None:
            raise UsageError("enhanced needs --k and --nd")
        return make_enhanced(args.k, args.nd, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _params_dict(code: FlashCode) -> dict:
    p = code.params
    return {"k": p.k, "n": p.n, "q": p.q, "dims": list(p.dims)}


def cmd_verify(args: argparse.Namespace) -> int:
    code = build_code(args)
    started = time.perf_counter()
    try:
        result = exact_guarantee(
            code, max_states=args.max_states, threads=args.threads
        )
    except SearchBudgetExceeded as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_FAIL
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    p = code.params
    t_formula = code.guarantee_floor()
    t_upper = thm1_upper(p.n, p.k, 2, p.q)
    deficiency = p.n * (p.q - 1) - result.t_star
    passed = result.t_star <= t_upper and (
        t_formula is None or t_formula < 0 or result.t_star >= t_formula
    )
    record = {
        "code": code.name,
        "params": _params_dict(code),
        "t_star": result.t_star,
        "t_formula": t_formula,
        "t_upper": t_upper,
        "deficiency": deficiency,
        "pass": passed,
        "states": result.states_explored,
        "ms": None,
    }
    if args.json:
        print(json.dumps(record))
    else:
        for key in ("code", "params", "t_star", "t_formula", "t_upper", "deficiency"):
            print(f"{key:12} {record[key]}")
        if isinstance(code, (EnhancedCode, VirtualizedCode)) and hasattr(
            code, "reported_floor"
        ):
            reported = code.reported_floor()
            print(f"{'t_reported':12} {reported}")
            print(f"{'gap':12} {result.t_star - reported}")
        print(f"{'states':12} {record['states']}")
        print(f"{'ms':12} {elapsed_ms:.1f}")
        print(f"{'pass':12} {passed}")
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_simulate(args: argparse.Namespace) -> int:
    code = build_code(args)
    monitors = None
    if args.monitors is not None:
        if args.monitors == "none":
            monitors = ()
        else:
            wanted = set(args.monitors.split(","))
            available = {name: spec for spec in code.monitors() for name in [spec[0]]}
            unknown = wanted - set(available)
            if unknown:
                raise UsageError(
                    f"unknown monitors {sorted(unknown)}; "
                    f"available: {sorted(available)}"
                )
            monitors = tuple(available[name] for name in sorted(wanted))
    report = random_walk(code, args.steps, args.seed, monitors, restart=True)
    print(f"code         {code.name}")
    print(f"seed         {report.seed}")
    print(f"steps        {report.steps_taken}/{report.steps_requested}")
    first = report.writes_until_erase
    print(f"first-erase  {'none' if first is None else first}")
    print(f"erases       {report.erase_count}")
    for name, value in sorted(report.monitor_maxima.items()):
        print(f"monitor-max  {name}={value}")
    print(f"violations   {len(report.violations)}")
    for v in report.violations[:10]:
        print(f"  step {v.step}: {v.kind} at {format_state(v.state)} bit {v.bit}")
    return EXIT_PASS if report.ok else EXIT_FAIL


def cmd_bounds(args: argparse.Namespace) -> int:
    try:
        lo_text, hi_text = args.n_range.split(":")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise UsageError(f"malformed --n-range {args.n_range!r}, want a:b") from exc
    if lo < 1 or hi < lo:
        raise UsageError(f"empty range {args.n_range!r}")
    reports = [bound_report(n, args.k, args.q, args.ell) for n in range(lo, hi + 1)]
    if args.csv:
        print(CSV_HEADER)
        for r in reports:
            print(r.csv_row())
    else:
        print(f"{'n':>5} {'t_upper':>8} {'defic_lb':>9} {'guarantee':>10} {'ratio':>8}")
        for r in reports:
            g = "-" if r.guarantee is None else str(r.guarantee)
            ratio = "-" if r.ratio is None else str(r.ratio)
            print(f"{r.n:>5} {r.t_upper:>8} {r.deficiency_lower:>9} {g:>10} {ratio:>8}")
    return EXIT_PASS


def cmd_trace(args: argparse.Namespace) -> int:
    code = build_code(args)
    state = initial_state(code.params)
    k = code.params.k
    step = 0
    for line_no, raw in enumerate(sys.stdin, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            bit = int(text)
        except ValueError:
            print(f"line {line_no}: malformed bit index {text!r}", file=sys.stderr)
            return EXIT_USAGE
        if not 0 <= bit < k:
            print(
                f"line {line_no}: bit index {bit} out of range [0, {k})",
                file=sys.stderr,
            )
            return EXIT_USAGE
        out = code.write(state, bit)
        if out is ERASE:
            print("ERASE")
            return EXIT_PASS
        state = out
        step += 1
        print(f"{step},{bit},{format_state(state)},{format_bits(code.decode(state))}")
    return EXIT_PASS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flashcodes",
        description="Rewriting codes for multilevel cells: exact verification, "
        "random-walk audits, closed-form bounds, and write traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="measure the exact write guarantee")
    _add_code_args(p)
    p.add_argument("--json", action="store_true", help="machine-readable record")
    p.add_argument("--threads", type=int, default=1, help="oracle worker threads")
    p.add_argument(
        "--max-states", type=int, default=10**8, help="memo cap for the search"
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="seeded random-walk audit")
    _add_code_args(p)
    p.add_argument("--steps", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--monitors",
        help="comma-separated monitor names, or 'none'; defaults to the "
        "construction's own monitors",
    )
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="bound table over a range of cell counts")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ell", type=int, default=2, help="variable alphabet size")
    p.add_argument("--n-range", required=True, help="inclusive range a:b")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("trace", help="apply bit flips read from standard input")
    _add_code_args(p)
    p.set_defaults(func=cmd_trace)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
