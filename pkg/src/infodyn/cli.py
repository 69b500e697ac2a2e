"""Command-line tool: compute measures on tabular data, run demos, run CA profiles.

Exit codes: 0 success, 1 data/numeric error, 2 usage error.  Each computation
prints exactly one JSON object on a single line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .demos import DEMO_NAMES, run_demo
from .eca import EcaConfig, ca_profile
from .exceptions import InfodynError, PropertyError
from .io_tables import DataTable, read_table, write_csv
from .registry import ESTIMATORS, MEASURES, make_calculator

# Measures taking a single primary variable (given via --dest).
_SINGLE_VAR = ("entropy", "multi", "rate", "ais", "pi")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infodyn",
                                     description="Information dynamics of time series")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="compute a measure on tabular data")
    comp.add_argument("--measure", required=True, choices=MEASURES)
    comp.add_argument("--estimator", required=True, choices=ESTIMATORS)
    comp.add_argument("--input", required=True, action="append",
                      help="data file; repeat for multiple trials (ensemble)")
    comp.add_argument("--format", default="csv", choices=["csv", "octave"])
    comp.add_argument("--source", help="source column spec (names or 0-based indices)")
    comp.add_argument("--dest", help="destination column spec")
    comp.add_argument("--cond", help="conditional column spec")
    comp.add_argument("--alphabet", type=int, help="alphabet size for discrete data")
    comp.add_argument("-p", "--property", action="append", default=[],
                      metavar="KEY=VALUE", help="estimator property")
    comp.add_argument("--local", metavar="OUT.csv", help="write the local series here")
    comp.add_argument("--surrogates", type=int, help="number of surrogates")
    comp.add_argument("--seed", type=int, default=0)
    comp.add_argument("--surrogate-method", default="permutation",
                      choices=["permutation", "rotation"])
    comp.add_argument("--analytic-null", action="store_true",
                      help="also report the analytic chi-square p-value")
    comp.add_argument("--correct-comparisons", type=int, metavar="M",
                      help="Bonferroni-correct reported p-values for M comparisons")

    demo = sub.add_parser("demo", help="run a bundled demonstration")
    demo.add_argument("name", choices=DEMO_NAMES)
    demo.add_argument("--out", default="demo_out")
    demo.add_argument("--seed", type=int, default=42)

    ca = sub.add_parser("ca", help="local information profile of an ECA run")
    ca.add_argument("--rule", type=int, required=True)
    ca.add_argument("--width", type=int, default=35)
    ca.add_argument("--steps", type=int, default=550)
    ca.add_argument("--measure", default="ais",
                    choices=["ais", "te_left", "te_right", "separable", "entropy"])
    ca.add_argument("-k", type=int, default=16, dest="k")
    ca.add_argument("--seed", type=int, default=42)
    ca.add_argument("--out", default="grid.csv")
    return parser


def _parse_properties(pairs: list[str]) -> dict[str, str]:
    props = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise PropertyError(f"property {pair!r} is not of the form key=value")
        props[key.strip()] = value.strip()
    return props


def _calculator_args(measure: str, table: DataTable, args) -> tuple:
    def need(flag, value):
        if value is None:
            raise PropertyError(f"--{flag} is required for measure {measure!r}")
        return table.select(value)

    if measure in _SINGLE_VAR:
        return (need("dest", args.dest),)
    if measure == "mi":
        return (need("dest", args.dest), need("source", args.source))
    if measure == "cmi":
        return (need("dest", args.dest), need("source", args.source), need("cond", args.cond))
    if measure in ("te", "collective-te"):
        return (need("source", args.source), need("dest", args.dest))
    if measure == "cte":
        return (need("source", args.source), need("dest", args.dest), need("cond", args.cond))
    if measure == "separable":
        return (need("dest", args.dest), need("source", args.source))
    raise PropertyError(f"unknown measure {measure!r}")


def _apply_alphabet(calc, alphabet):
    if alphabet is None:
        return
    for name in ("alphabet", "alphabet_source", "alphabet_y", "alphabet_z", "alphabet_cond"):
        if name in calc._param_names() and getattr(calc, name, None) is None:
            calc.set_params(**{name: alphabet})


def run_compute(args) -> dict:
    calc = make_calculator(args.measure, args.estimator)
    _apply_alphabet(calc, args.alphabet)
    props = _parse_properties(args.property)
    calc.set_properties(props)
    # --seed seeds the calculator too, unless an explicit seed property wins
    if "seed" in calc._param_names() and "seed" not in props:
        calc.set_params(seed=args.seed)
    calc.initialise()
    for path in args.input:
        table = read_table(path, args.format)
        calc.add_observations(*_calculator_args(args.measure, table, args))
    calc.finalise()

    record = {
        "measure": args.measure,
        "estimator": args.estimator,
        "units": calc.units,
        "average": calc.compute_average(),
        "n_observations": calc._store.n_tuples,
    }
    correction = args.correct_comparisons

    def corrected(p):
        return min(1.0, p * correction) if correction else p

    if args.surrogates:
        null = calc.compute_significance(args.surrogates, method=args.surrogate_method,
                                         seed=args.seed)
        record.update({
            "p_value": corrected(null.p_value),
            "surrogate_mean": null.mean,
            "surrogate_std": null.std,
            "t_score": null.t_score,
            "n_surrogates": null.n_surrogates,
            "surrogate_method": null.method,
            "seed": args.seed,
        })
    if args.analytic_null:
        null = calc.compute_analytic_significance()
        record.update({
            "analytic_p_value": corrected(null.p_value),
            "analytic_mean": null.mean,
            "analytic_dof": null.dof,
        })
    if args.local:
        local = calc.compute_local()
        write_csv(DataTable(names=["local"], data=local[:, None]), args.local)
        record["local_file"] = args.local
    return record


def run_ca(args) -> dict:
    cfg = EcaConfig(rule=args.rule, width=args.width, steps=args.steps, seed=args.seed)
    grid, average, calc = ca_profile(cfg, args.measure, k=args.k)
    write_csv(DataTable(names=[f"c{j}" for j in range(args.width)], data=grid), args.out)
    return {
        "rule": args.rule,
        "width": args.width,
        "steps": args.steps,
        "measure": args.measure,
        "k": args.k,
        "units": "bits",
        "average": average,
        "grid_file": args.out,
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            record = run_compute(args)
        elif args.command == "ca":
            record = run_ca(args)
        else:
            out = Path(args.out)
            run_demo(args.name, out, seed=args.seed)
            record = {"demo": args.name, "out": str(out), "seed": args.seed}
        print(json.dumps(record, sort_keys=True))
        return 0
    except PropertyError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InfodynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
