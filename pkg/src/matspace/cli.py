"""Command-line entry point: analyze / recover / census / verify over JSON.

Exit codes are a stable contract for scripting:
  0  every check holds / recovery succeeded
  1  a hypothesis fails or recovery produced a witness (still a correct run)
  2  input or format error
  3  an Unknown verdict blocked a definitive answer
  4  budget or cap exceeded
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from ._version import __version__
from .census import (
    DEFAULT_CAP,
    census,
    max_diag_dim,
    verify_classification,
)
from .errors import BudgetExceeded, CapExceeded, InvalidInput, MatSpaceError
from .fields import make_field
from .predicates import FAILS, UNKNOWN
from .recovery import CONDITIONAL, PARTIAL, SUCCESS, recover
from .serialize import (
    analyze_report,
    census_report_json,
    classification_result,
    max_diag_dim_result,
    recovery_report,
    space_from_json,
    verify_report,
)
from .spaces import DEFAULT_BUDGET

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3
EXIT_BUDGET = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matspace",
        description="Exact toolkit for subspaces of Mat_n over GF(p) and Q",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="path to JSON input")
        p.add_argument("--field", help="ground field: gf<p> or rational")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", help="also write the report to this path")

    p_an = sub.add_parser("analyze", help="dimension, orthogonal complement, predicate verdicts")
    common(p_an)

    p_rec = sub.add_parser("recover", help="run the similarity-recovery pipeline")
    common(p_rec)

    p_cen = sub.add_parser("census", help="exhaustive subspace enumeration")
    p_cen.add_argument("--task", choices=["count", "maxdim", "classify"], default="count")
    p_cen.add_argument("--n", type=int, required=True)
    p_cen.add_argument("--q", type=int, required=True)
    p_cen.add_argument("--d", type=int)
    p_cen.add_argument("--pred", help="comma list: diag, trivspec, irred")
    p_cen.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_cen.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p_cen.add_argument("--workers", type=int, default=1)
    p_cen.add_argument("--heavy", action="store_true")
    p_cen.add_argument("--witness-limit", type=int, default=5)
    p_cen.add_argument("--csv", help="also write a CSV tally table")
    p_cen.add_argument("--output", help="also write the report to this path")

    p_ver = sub.add_parser("verify", help="re-check a previously emitted report")
    p_ver.add_argument("--input", required=True)
    p_ver.add_argument("--workers", type=int, default=1)
    p_ver.add_argument("--heavy", action="store_true")
    p_ver.add_argument("--output", help="also write the verification summary to this path")
    return parser


def _emit(report: dict, output: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")


def _load_space(args):
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {args.input}: {exc}") from exc
    field = make_field(args.field) if args.field else None
    return space_from_json(obj, field=field)


def _cmd_analyze(args) -> int:
    V = _load_space(args)
    report = analyze_report(V, args.budget, args.seed)
    _emit(report, args.output)
    statuses = [v["status"] for v in report["result"]["verdicts"].values()]
    if FAILS in statuses:
        return EXIT_FAILS
    if UNKNOWN in statuses:
        return EXIT_UNKNOWN
    return EXIT_OK


def _cmd_recover(args) -> int:
    V = _load_space(args)
    rep = recover(V, args.budget, args.seed)
    report = recovery_report(rep)
    _emit(report, args.output)
    if rep.status in (SUCCESS, CONDITIONAL):
        return EXIT_OK
    if rep.status == PARTIAL:
        return EXIT_UNKNOWN
    return EXIT_FAILS


def _cmd_census(args) -> int:
    if args.task == "maxdim":
        d_max, witness = max_diag_dim(
            args.n, args.q, budget=args.budget, cap=args.cap, heavy=args.heavy
        )
        report = {
            "type": "max_diag_dim",
            "version": __version__,
            "budget": args.budget,
            "cap": args.cap,
            "result": max_diag_dim_result(args.n, args.q, d_max, witness),
        }
        _emit(report, args.output)
        return EXIT_OK
    if args.task == "classify":
        res = verify_classification(
            args.n, args.q, budget=args.budget, cap=args.cap, heavy=args.heavy
        )
        report = {
            "type": "classification",
            "version": __version__,
            "budget": args.budget,
            "cap": args.cap,
            "result": classification_result(res),
        }
        _emit(report, args.output)
        ok = (
            res["trivial_spectrum_form"]["all_expressible"]
            and res["diagonalizable_form"]["all_similar"]
        )
        return EXIT_OK if ok else EXIT_FAILS
    if args.d is None or not args.pred:
        raise InvalidInput("census counting needs --d and --pred")
    preds = [p for p in args.pred.split(",") if p.strip()]
    rep = census(
        args.n,
        args.q,
        args.d,
        preds,
        budget=args.budget,
        cap=args.cap,
        workers=args.workers,
        witness_limit=args.witness_limit,
        heavy=args.heavy,
    )
    report = census_report_json(rep)
    _emit(report, args.output)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "q", "d", "predicate", "count", "total"])
            for name in rep.predicates:
                writer.writerow([rep.n, rep.q, rep.d, name, rep.counts[name], rep.total])
    final = rep.counts[rep.predicates[-1]]
    return EXIT_OK if final == rep.total else EXIT_FAILS


def _cmd_verify(args) -> int:
    try:
        with open(args.input) as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {args.input}: {exc}") from exc
    try:
        ok, details = verify_report(report, workers=args.workers, heavy=args.heavy)
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed report: {exc!r}") from exc
    summary = {"type": "verification", "ok": ok, "details": details}
    _emit(summary, args.output)
    return EXIT_OK if ok else EXIT_FAILS


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches the input-error code
        return EXIT_INPUT if exc.code not in (0,) else 0
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "recover":
            return _cmd_recover(args)
        if args.command == "census":
            return _cmd_census(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise InvalidInput(f"unknown command {args.command!r}")
    except (BudgetExceeded, CapExceeded) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_BUDGET
    except InvalidInput as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except MatSpaceError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
