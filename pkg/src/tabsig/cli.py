"""Command line interface: per-table index reports, whole-space sweeps, power grids.

Output is CSV with ';' as the top-level delimiter (cells contain commas) or
JSON. Reals are serialized as shortest round-trip decimals, so identical flags
and seed produce byte-identical output.

Exit codes: 0 ok, 1 usage or invalid input, 2 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from .exact import DEFAULT_BUDGET, BudgetExceededError
from .numerics import RngStream
from .power import estimate_power
from .report import SWEEP_COLUMNS, compute_report, sweep_indices
from .tables import ContingencyTable, Hypothesis, HypothesisSpec

PRESETS = {
    1: lambda: HypothesisSpec.homogeneity((30, 30), 2),
    2: lambda: HypothesisSpec.homogeneity((100, 100), 2),
    3: lambda: HypothesisSpec.homogeneity((30, 30), 3),
    4: lambda: HypothesisSpec.homogeneity((15, 15, 15), 3),
    5: lambda: HypothesisSpec.independence(2, 2, 30),
    6: lambda: HypothesisSpec.independence(2, 3, 30),
    7: lambda: HypothesisSpec.independence(3, 3, 15),
    8: lambda: HypothesisSpec.independence(3, 3, 25),
    9: lambda: HypothesisSpec.hardy_weinberg(30),
    10: lambda: HypothesisSpec.hardy_weinberg(100),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; usage errors are 1 here
        raise UsageError(message)


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def _parse_table(text: str) -> ContingencyTable:
    try:
        rows = [[int(v) for v in seg.split(",")] for seg in text.split(";")]
    except ValueError:
        raise UsageError(f"cannot parse table {text!r}; expected e.g. '10,0;0,10'")
    return ContingencyTable.from_rows(rows)


def _parse_margins(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse margins {text!r}; expected e.g. '30,30'")


def _open_out(path):
    if path is None or path == "-":
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="tabsig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help=f"largest table space to enumerate (default {DEFAULT_BUDGET})")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format (default: json for index, csv otherwise)")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p_index = sub.add_parser("index", help="all indices for one observed table")
    p_index.add_argument("--hypothesis", required=True,
                         choices=[h.value for h in Hypothesis])
    p_index.add_argument("--table", required=True,
                         help="cells row-major, rows ';'-separated: '10,0;0,10'")
    p_index.add_argument("--mc-samples", type=int, default=100_000,
                         help="posterior draws for the Monte Carlo e-value (default 100000)")
    common(p_index)
    p_index.set_defaults(func=_cmd_index)

    p_sweep = sub.add_parser("sweep", help="all indices for every table of a scenario")
    p_sweep.add_argument("--preset", type=int, choices=sorted(PRESETS),
                         help="predefined scenario number")
    p_sweep.add_argument("--hypothesis", choices=[h.value for h in Hypothesis])
    p_sweep.add_argument("--margins", help="homogeneity row margins, e.g. '30,30'")
    p_sweep.add_argument("--cols", type=int, default=2, help="column count (default 2)")
    p_sweep.add_argument("--rows", type=int, default=2,
                         help="row count for independence (default 2)")
    p_sweep.add_argument("--n", type=int, help="grand total (independence, Hardy-Weinberg)")
    p_sweep.add_argument("--mc-samples", type=int, default=100_000)
    common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_power = sub.add_parser("power", help="Monte Carlo power grid for the frequentist tests")
    p_power.add_argument("--hypothesis", required=True,
                         choices=(Hypothesis.HOMOGENEITY.value, Hypothesis.HARDY_WEINBERG.value))
    p_power.add_argument("--margins", default="10,10",
                         help="homogeneity row margins (default '10,10')")
    p_power.add_argument("--n", type=int, help="Hardy-Weinberg sample size")
    p_power.add_argument("--grid", type=int, default=100, help="lattice points per axis (default 100)")
    p_power.add_argument("--reps", type=int, default=1000, help="tables per lattice point (default 1000)")
    p_power.add_argument("--alpha", type=float, default=0.05, help="rejection threshold (default 0.05)")
    common(p_power)
    p_power.set_defaults(func=_cmd_power)

    return parser


def _cmd_index(args) -> int:
    table = _parse_table(args.table)
    spec = HypothesisSpec.for_table(Hypothesis(args.hypothesis), table)
    report = compute_report(
        table, spec, seed=args.seed, mc_samples=args.mc_samples, budget=args.budget
    )
    with _open_out(args.out) as out:
        if (args.format or "json") == "json":
            json.dump(report.to_dict(), out, indent=2)
            out.write("\n")
        else:
            row = {
                "cells": ",".join(str(v) for r in report.cells for v in r),
                "lambda": report.lambda_,
                "neg2loglambda": report.neg2_log_lambda,
                "p_exact": report.p_exact,
                "p_lrt_asym": report.p_lrt_asym,
                "p_chi2": report.p_chi2,
                "p_fisher": report.p_fisher,
                "ev_mc": report.ev_mc,
                "ev_asym": report.ev_asym,
            }
            out.write(";".join(SWEEP_COLUMNS) + "\n")
            out.write(";".join([row["cells"]] + [_fmt(row[c]) for c in SWEEP_COLUMNS[1:]]) + "\n")
    return 0


def _sweep_spec(args) -> HypothesisSpec:
    if args.preset is not None:
        return PRESETS[args.preset]()
    if args.hypothesis is None:
        raise UsageError("sweep needs --preset or --hypothesis")
    kind = Hypothesis(args.hypothesis)
    if kind is Hypothesis.HOMOGENEITY:
        if args.margins is None:
            raise UsageError("homogeneity sweep needs --margins")
        return HypothesisSpec.homogeneity(_parse_margins(args.margins), args.cols)
    if kind is Hypothesis.INDEPENDENCE:
        if args.n is None:
            raise UsageError("independence sweep needs --n")
        return HypothesisSpec.independence(args.rows, args.cols, args.n)
    if args.n is None:
        raise UsageError("hardy-weinberg sweep needs --n")
    return HypothesisSpec.hardy_weinberg(args.n)


def _cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    rows = sweep_indices(spec, seed=args.seed, mc_samples=args.mc_samples, budget=args.budget)
    with _open_out(args.out) as out:
        if (args.format or "csv") == "csv":
            out.write(";".join(SWEEP_COLUMNS) + "\n")
            for row in rows:
                out.write(
                    ";".join([row["cells"]] + [_fmt(row[c]) for c in SWEEP_COLUMNS[1:]]) + "\n"
                )
        else:
            json.dump(list(rows), out, indent=2)
            out.write("\n")
    return 0


def _cmd_power(args) -> int:
    kind = Hypothesis(args.hypothesis)
    if kind is Hypothesis.HOMOGENEITY:
        margins = _parse_margins(args.margins)
        if len(margins) != 2:
            raise UsageError("power needs exactly two homogeneity margins")
        spec = HypothesisSpec.homogeneity(margins, 2)
    else:
        if args.n is None:
            raise UsageError("hardy-weinberg power needs --n")
        spec = HypothesisSpec.hardy_weinberg(args.n)
    grid = estimate_power(
        spec,
        grid_size=args.grid,
        replicates=args.reps,
        alpha=args.alpha,
        rng=RngStream(args.seed),
        budget=args.budget,
    )
    with _open_out(args.out) as out:
        if (args.format or "csv") == "csv":
            out.write("theta1;theta2;test;power;reps\n")
            for i in range(grid.theta1.size):
                for test in grid.tests:
                    out.write(
                        ";".join(
                            [
                                _fmt(grid.theta1[i]),
                                _fmt(grid.theta2[i]),
                                test,
                                _fmt(grid.power[test][i]),
                                str(grid.replicates),
                            ]
                        )
                        + "\n"
                    )
        else:
            payload = [
                {
                    "theta1": float(grid.theta1[i]),
                    "theta2": float(grid.theta2[i]),
                    "test": test,
                    "power": float(grid.power[test][i]),
                    "reps": grid.replicates,
                }
                for i in range(grid.theta1.size)
                for test in grid.tests
            ]
            json.dump(payload, out, indent=2)
            out.write("\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
