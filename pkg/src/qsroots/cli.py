"""Command-line root-finder and benchmark harness.

Two subcommands:

    qsroots roots --input FILE [--balance on|off] [--tol T] [--max-iter K]
                  [--true-roots FILE] [--format json|csv|text]
    qsroots bench --suite NAME --n-from A --n-to B [--seed S]
                  [--balance both|on|off]

The roots input file is JSON:

    {"basis": "monomial", "coeffs": [m0, ..., m_{n-1}]}
    {"basis": "orthogonal", "alpha": [...], "beta": [...], "coeffs": [...]}

with numbers given as floats or decimal strings; the leading coefficient is
1 and implicit.  ``bench`` writes machine-readable CSV rows (n, balance,
eps, ni, status) to stdout at 17 significant digits and an aligned table to
stderr.  The environment variable QSROOTS_LOG={off,info,trace} turns on
diagnostic logging of shifts and deflations.

Exit codes: 0 success, 2 parse/usage error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys

import numpy as np

from .eigensolver import SolveConfig
from .errors import QsRootsError
from .polyroots import Polynomial, pair_relative_error, roots
from .suites import SUITES

_PARSE_ERROR = 2
_SOLVER_ERROR = 3


def _configure_logging() -> None:
    level = os.environ.get("QSROOTS_LOG", "off").strip().lower()
    chosen = {"off": None, "info": logging.INFO, "trace": logging.DEBUG}.get(level)
    if chosen is not None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        root = logging.getLogger("qsroots")
        root.addHandler(handler)
        root.setLevel(chosen)


def _num(x) -> float:
    if isinstance(x, (int, float)):
        return float(x)
    if isinstance(x, str):
        return float(x)
    raise ValueError(f"not a number: {x!r}")


def _load_polynomial(path: str) -> Polynomial:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise ValueError("input must be an object with a 'coeffs' list")
    coeffs = [_num(x) for x in doc["coeffs"]]
    basis = doc.get("basis", "monomial")
    if basis == "monomial":
        return Polynomial(tuple(coeffs))
    if basis == "orthogonal":
        alpha = [_num(x) for x in doc.get("alpha", [])]
        beta = [_num(x) for x in doc.get("beta", [])]
        return Polynomial(tuple(coeffs), alpha=tuple(alpha), beta=tuple(beta))
    raise ValueError(f"unknown basis {basis!r}")


def _load_true_roots(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if isinstance(doc, dict):
        doc = doc.get("roots")
    if not isinstance(doc, list):
        raise ValueError("true-roots file must be a JSON list (or {'roots': [...]})")
    return np.array([_num(x) for x in doc])


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def _print_roots_report(report, eps, fmt, balance) -> None:
    if fmt == "json":
        doc = {
            "degree": int(len(report.roots)),
            "balance": bool(balance),
            "roots": [float(r) for r in report.roots],
            "iters": list(report.iters),
            "total_iters": report.total_iters,
            "iters_per_root": report.iters_per_root,
            "deflations": [
                {
                    "active_size": ev.active_size,
                    "shift": ev.shift,
                    "criterion_value": ev.criterion_value,
                    "trailing_entry": ev.trailing_entry,
                }
                for ev in report.deflation_log
            ],
        }
        if eps is not None:
            doc["eps"] = eps
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif fmt == "csv":
        print("index,root")
        for i, r in enumerate(report.roots):
            print(f"{i},{_g17(r)}")
        if eps is not None:
            print(f"eps,{_g17(eps)}")
    else:
        for r in np.sort(report.roots):
            print(f"  {r: .17g}")
        print(f"sweeps: {report.total_iters} total, {report.iters_per_root:.2f} per root")
        if eps is not None:
            print(f"max relative error vs true roots: {eps:.3e}")


def _cmd_roots(args) -> int:
    try:
        poly = _load_polynomial(args.input)
        true_roots = _load_true_roots(args.true_roots) if args.true_roots else None
        if true_roots is not None and len(true_roots) != poly.degree:
            raise ValueError("true-roots length must equal the degree")
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"qsroots: input error: {exc}", file=sys.stderr)
        return _PARSE_ERROR

    cfg = SolveConfig(balance=args.balance == "on")
    if args.tol is not None:
        cfg = dataclasses.replace(cfg, deflation_tol=args.tol)
    if args.max_iter is not None:
        cfg = dataclasses.replace(cfg, max_iters_per_root=args.max_iter)

    try:
        report = roots(poly, cfg)
    except QsRootsError as exc:
        failure = {"error": type(exc).__name__, "message": str(exc)}
        if args.format == "json":
            json.dump(failure, sys.stdout, indent=2)
            sys.stdout.write("\n")
        else:
            print(f"qsroots: solver failed: {failure['error']}: {failure['message']}",
                  file=sys.stderr)
        return _SOLVER_ERROR

    eps = None
    if true_roots is not None:
        eps = pair_relative_error(true_roots, report.roots)
    _print_roots_report(report, eps, args.format, cfg.balance)
    return 0


def _bench_rows(suite_name, n_values, seed, modes):
    suite = SUITES[suite_name]
    rng = np.random.default_rng(seed)
    for n in n_values:
        poly, true = suite(n, rng)
        for mode in modes:
            cfg = SolveConfig(balance=(mode == "on"))
            try:
                report = roots(poly, cfg)
            except QsRootsError as exc:
                yield (n, mode, float("nan"), float("nan"), type(exc).__name__)
                continue
            eps = pair_relative_error(true, report.roots)
            yield (n, mode, eps, report.iters_per_root, "ok")


def _cmd_bench(args) -> int:
    if args.suite not in SUITES:
        print(f"qsroots: unknown suite {args.suite!r}; choose from "
              f"{', '.join(sorted(SUITES))}", file=sys.stderr)
        return _PARSE_ERROR
    if args.n_from < 1 or args.n_to < args.n_from:
        print("qsroots: need 1 <= --n-from <= --n-to", file=sys.stderr)
        return _PARSE_ERROR
    modes = {"both": ("on", "off"), "on": ("on",), "off": ("off",)}[args.balance]

    print("n,balance,eps,ni,status")
    text = [f"suite={args.suite} seed={args.seed}",
            f"{'n':>4} {'balance':>8} {'eps':>13} {'ni':>6} {'status':>12}"]
    for n, mode, eps, ni, status in _bench_rows(
            args.suite, range(args.n_from, args.n_to + 1), args.seed, modes):
        print(f"{n},{mode},{_g17(eps)},{_g17(ni)},{status}")
        text.append(f"{n:>4} {mode:>8} {eps:>13.3e} {ni:>6.2f} {status:>12}")
    print("\n".join(text), file=sys.stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsroots",
        description="Polynomial root-finder based on structured qd iterations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cmd_roots = sub.add_parser("roots", help="find all roots of one polynomial")
    cmd_roots.add_argument("--input", required=True, help="polynomial JSON file")
    cmd_roots.add_argument("--balance", choices=("on", "off"), default="on")
    cmd_roots.add_argument("--tol", type=float, default=None,
                           help="deflation tolerance (default 1e-12)")
    cmd_roots.add_argument("--max-iter", type=int, default=None,
                           help="sweep budget per root (default 50)")
    cmd_roots.add_argument("--true-roots", default=None,
                           help="JSON list of exact roots for error reporting")
    cmd_roots.add_argument("--format", choices=("json", "csv", "text"),
                           default="json")

    cmd_bench = sub.add_parser("bench", help="run a benchmark suite")
    cmd_bench.add_argument("--suite", required=True)
    cmd_bench.add_argument("--n-from", type=int, required=True)
    cmd_bench.add_argument("--n-to", type=int, required=True)
    cmd_bench.add_argument("--seed", type=int, default=0)
    cmd_bench.add_argument("--balance", choices=("both", "on", "off"),
                           default="both")
    return parser


def main(argv=None) -> int:
    _configure_logging()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which matches our contract.
        return int(exc.code) if exc.code else 0
    if args.command == "roots":
        return _cmd_roots(args)
    return _cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
