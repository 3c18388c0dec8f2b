"""Command-line entry point.

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 a check failed.
"""

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .applications import picard_report
from .errors import CheckFailed, NoSmoothVertex
from .harness import fuzz_trial, oracle_trial, run_trials, summarize_fuzz
from .pair import validate
from .report import (
    DocumentError,
    analysis_report,
    basis_section,
    cellular_section,
    dumps,
    invalid_report,
    load_json,
    parse_pair_document,
    parse_polynomial_document,
    polynomial_terms,
    tool_section,
    topology_section,
)
from .wsr import integrality_check

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_CHECK = 0, 1, 2, 3

PAIR_COMMANDS = ("validate", "analyze", "basis", "cellular", "picard")


class _Failure(Exception):
    def __init__(self, code, payload):
        self.code = code
        self.payload = payload


def _load_pair(path):
    try:
        raw = parse_pair_document(load_json(path))
    except (DocumentError, OSError) as exc:
        raise _Failure(EXIT_INVALID, {
            "tool": tool_section(),
            "input": {"path": str(path)},
            "validation": {"valid": False,
                           "violations": [{"kind": "Malformed", "index": None, "detail": str(exc)}]},
        })
    result = validate(raw)
    if isinstance(result, list):
        raise _Failure(EXIT_INVALID, invalid_report(raw, result))
    return result


def _pair_command(cmd, path):
    """Report for one pair file; returns ``(exit code, report)``."""
    try:
        pair = _load_pair(path)
        if cmd == "validate":
            report = {"tool": tool_section(), "input": {"lambda": pair.lambdas},
                      "validation": {"valid": True, "violations": []},
                      "topology": topology_section(pair)}
        elif cmd == "analyze":
            report = analysis_report(pair)
        elif cmd == "basis":
            report = {"tool": tool_section(), "input": {"lambda": pair.lambdas},
                      "wsr2": basis_section(pair)}
        elif cmd == "picard":
            report = {"tool": tool_section(), "input": {"lambda": pair.lambdas},
                      "picard": picard_report(pair)}
        else:
            try:
                section = cellular_section(pair)
            except NoSmoothVertex as exc:
                raise _Failure(EXIT_CHECK, {
                    "tool": tool_section(), "input": {"lambda": pair.lambdas},
                    "error": "NoSmoothVertex", "witness": {"vertex_dets": pair.vertex_dets()},
                    "detail": str(exc)})
            report = {"tool": tool_section(), "input": {"lambda": pair.lambdas},
                      "cellular": section}
    except _Failure as f:
        return f.code, f.payload
    except CheckFailed as exc:
        return EXIT_CHECK, {"tool": tool_section(), "error": "CheckFailed",
                            "detail": str(exc), "witness": exc.witness}
    return EXIT_OK, report


def _human(report):
    lines = []
    if "input" in report and "lambda" in report["input"]:
        lines.append(f"lambda = {list(report['input']['lambda'])}")
    val = report.get("validation")
    if val is not None:
        lines.append("valid" if val["valid"] else
                     "invalid: " + ", ".join(str(v) for v in val["violations"]))
    topo = report.get("topology")
    if topo is not None:
        lines.append(f"minor gcd {topo.minor_gcd}, H^3 torsion {list(topo.h3_invariants)}, "
                     f"even cohomology {topo.even_cohomology}")
    wsr = report.get("wsr2")
    if wsr is not None:
        lines.append(f"wSR^2 basis {[list(v) for v in wsr['basis']]}, index {wsr['index']}")
    pic = report.get("picard")
    if pic is not None:
        lines.append(f"[Cl : Pic] = {pic.index}, Cl torsion {list(pic.class_torsion)}")
    return "\n".join(lines)


def _emit(report, verbose, stream=None):
    (stream or sys.stdout).write(dumps(report))
    if verbose:
        text = _human(report) if isinstance(report, dict) else ""
        if text:
            print(text, file=sys.stderr)


def cmd_pair(args):
    path = Path(args.path)
    if not path.is_dir():
        code, report = _pair_command(args.command, path)
        _emit(report, args.verbose)
        return code
    files = sorted(path.glob("*.json"))
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    entries, reports = [], []
    for f in files:
        try:
            code, report = _pair_command(args.command, f)
        except Exception as exc:  # one bad file must not abort the batch
            code, report = EXIT_INTERNAL, {"error": type(exc).__name__, "detail": str(exc)}
        entries.append({"file": f.name, "exit": code})
        if out_dir:
            (out_dir / f"{f.stem}.{args.command}.json").write_text(dumps(report), encoding="utf-8")
        else:
            reports.append({"file": f.name, "report": report})
        if args.verbose:
            print(f"{f.name}: exit {code}", file=sys.stderr)
    failed = sum(1 for e in entries if e["exit"])
    summary = {"tool": tool_section(), "command": args.command, "files": entries,
               "summary": {"total": len(entries), "ok": len(entries) - failed, "failed": failed}}
    if not out_dir:
        summary["reports"] = reports
    _emit(summary, False)
    return max((e["exit"] for e in entries), default=EXIT_OK)


def cmd_check(args):
    try:
        pair = _load_pair(args.pair)
        f = parse_polynomial_document(load_json(args.poly), pair.m)
    except _Failure as fail:
        _emit(fail.payload, args.verbose)
        return fail.code
    except (DocumentError, OSError, KeyError, TypeError) as exc:
        _emit({"tool": tool_section(), "error": "Malformed", "detail": str(exc)}, args.verbose)
        return EXIT_INVALID
    res = integrality_check(pair, f)
    report = {"tool": tool_section(), "input": {"lambda": pair.lambdas,
                                                "polynomial": polynomial_terms(f)},
              "passed": res.passed, "witness": res.witness}
    _emit(report, args.verbose)
    if args.verbose:
        print("integrality: " + ("pass" if res.passed else f"fail {res.witness}"), file=sys.stderr)
    return EXIT_OK if res.passed else EXIT_CHECK


def cmd_oracle(args):
    start = time.perf_counter()
    results = run_trials(oracle_trial, args.seed, args.trials, args.bound, args.m, args.jobs)
    failures = [r for r in results if r is not None]
    report = {"tool": tool_section(),
              "parameters": {"m": args.m, "bound": args.bound, "trials": args.trials,
                             "seed": args.seed},
              "agreements": args.trials - len(failures), "failures": failures}
    _emit(report, False)
    if args.verbose:
        print(f"{args.trials - len(failures)}/{args.trials} trials agree "
              f"({time.perf_counter() - start:.2f}s)", file=sys.stderr)
    return EXIT_CHECK if failures else EXIT_OK


def cmd_fuzz(args):
    start = time.perf_counter()
    results = run_trials(fuzz_trial, args.seed, args.trials, args.bound, args.m, args.jobs)
    table, failures = summarize_fuzz(results)
    report = {"tool": tool_section(),
              "parameters": {"m": args.m, "bound": args.bound, "trials": args.trials,
                             "seed": args.seed},
              "invariants": table, "failures": failures}
    _emit(report, False)
    if args.verbose:
        for name, row in table.items():
            print(f"{name:36s} pass {row['passed']:5d}  fail {row['failed']:3d}  "
                  f"n/a {row['skipped']:5d}", file=sys.stderr)
        print(f"{time.perf_counter() - start:.2f}s", file=sys.stderr)
    return EXIT_CHECK if failures else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="toricwsr",
        description="Integral wSR^2 bases, cellular bases and Picard data for polygon characteristic pairs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true",
                        help="human-readable summary on stderr")

    helps = {
        "validate": "check a pair and report its topology",
        "analyze": "full analysis report",
        "basis": "closed-form wSR^2 basis",
        "cellular": "algebraic cellular basis (normalizes to a smooth vertex)",
        "picard": "Cartier, Picard and class group data",
    }
    for name in PAIR_COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        p.add_argument("path", help="pair JSON file, or a directory of them")
        p.add_argument("--out", help="batch mode: write one report per input here")
        p.set_defaults(func=cmd_pair)

    p = sub.add_parser("check", parents=[common], help="integrality condition for a polynomial")
    p.add_argument("pair")
    p.add_argument("poly")
    p.set_defaults(func=cmd_check)

    for name, func, trials, helptext in (
        ("oracle", cmd_oracle, 200, "closed form vs lattice intersection on random pairs"),
        ("fuzz", cmd_fuzz, 100, "all invariants on random pairs"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--m", type=int, default=None, help="polygon size (default: cycle 3..8)")
        p.add_argument("--bound", type=int, default=9)
        p.add_argument("--trials", type=int, default=trials)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.set_defaults(func=func)
    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "m", None) is not None and args.m < 3:
        parser.error("--m must be at least 3")
    if getattr(args, "bound", 1) < 1:
        parser.error("--bound must be at least 1")
    try:
        return args.func(args)
    except BrokenPipeError:
        os._exit(EXIT_INTERNAL)
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())
