"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 budget
exceeded.  All randomness funnels through an explicit --seed flag.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import experiments, prob_bounds
from .errors import (BudgetExceededError, InvalidParameterError, RankforgeError,
                     ShapeError, SpecMismatchError, VerificationError)
from .field_arith import Element, FieldSpec, linearly_independent_over_base
from .mrd_criteria import _gabidulin_parameter, is_mrd
from .rank_codes import RankCode, gabidulin, min_rank_distance

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParameterError(f"cannot read JSON from {path}: {exc}") from exc


def _print_json(data):
    print(json.dumps(data, indent=2))


def _cmd_field_info(args):
    moduli = {}
    if args.modulus_file:
        data = _load_json(args.modulus_file)
        if "base_modulus" in data:
            moduli["base_modulus"] = data["base_modulus"]
        if "ext_modulus" in data:
            moduli["ext_modulus"] = data["ext_modulus"]
    spec = FieldSpec(args.p, args.e, args.m, **moduli)
    _print_json(spec.to_json())
    return EXIT_OK


def _random_independent_tuple(spec, n, rng):
    if n > spec.m:
        raise InvalidParameterError(
            f"n = {n} exceeds m = {spec.m}; independent tuples of that length do not exist")
    while True:
        g = [Element(spec, rng.randrange(spec.order)) for _ in range(n)]
        if linearly_independent_over_base(g):
            return g


def _cmd_gen_gabidulin(args):
    spec = FieldSpec.from_prime_power(args.q, args.m)
    if args.g_file:
        data = _load_json(args.g_file)
        g = [spec.element_from_coeffs(entry) for entry in data]
    else:
        rng = random.Random(args.seed)
        g = _random_independent_tuple(spec, args.n, rng)
    if len(g) != args.n:
        raise InvalidParameterError(f"expected {args.n} evaluation points, got {len(g)}")
    code = gabidulin(g, args.s, args.k)
    if args.check and not is_mrd(code):
        raise VerificationError("constructed code failed the maximality check")
    _print_json(code.to_json())
    return EXIT_OK


def _cmd_check(args):
    code = RankCode.from_json(_load_json(args.code_file))
    verdict = {}
    mrd = is_mrd(code)
    verdict["mrd"] = mrd
    if args.what in ("gabidulin", "both"):
        if not mrd:
            verdict["gabidulin_s"] = "not_applicable"
        else:
            verdict["gabidulin_s"] = _gabidulin_parameter(code)
    try:
        verdict["min_distance"] = min_rank_distance(code)
    except BudgetExceededError:
        verdict["min_distance"] = None
    _print_json(verdict)
    return EXIT_OK


def _cmd_bounds(args):
    if args.m_from > args.m_to:
        raise InvalidParameterError("--m-from must not exceed --m-to")
    if 1 < args.k < args.n - 1:
        M = prob_bounds.min_extension_degree(args.q, args.k, args.n)
        print(f"M({args.q},{args.k},{args.n})={M}")
    else:
        print(f"# no minimum extension degree: k={args.k} outside 1 < k < n-1")
    reports = prob_bounds.bound_table(args.q, args.k, args.n,
                                      range(args.m_from, args.m_to + 1))
    rows = [prob_bounds.bound_report_row(r) for r in reports]
    header = prob_bounds.BOUNDS_CSV_FIELDS[:8]
    print("\t".join(header))
    for row in rows:
        print("\t".join(str(row[h]) for h in header))
    if args.csv:
        experiments.write_csv(args.csv, prob_bounds.BOUNDS_CSV_FIELDS, rows)
    return EXIT_OK


def _cmd_simulate(args):
    batch = experiments.monte_carlo(args.q, args.k, args.n, args.m,
                                    args.trials, args.seed, args.workers)
    _print_json({
        "q": batch.q, "k": batch.k, "n": batch.n, "m": batch.m,
        "trials": batch.trials, "seed": batch.seed,
        "mrd_count": batch.mrd_count, "gab_count": batch.gab_count,
        "mrd_fraction": batch.mrd_count / batch.trials,
        "gab_fraction": batch.gab_count / batch.trials,
        "elapsed_seconds": round(batch.elapsed, 6),
    })
    if args.csv:
        experiments.write_csv(args.csv, experiments.TRIALS_CSV_FIELDS,
                              [experiments.trial_batch_row(batch)], append=True)
    return EXIT_OK


def _cmd_census(args):
    result = experiments.census(args.q, args.k, args.n, args.m,
                                checkpoint_path=args.resume)
    _print_json({
        "q": result.q, "k": result.k, "n": result.n, "m": result.m,
        "total": result.total, "mrd_count": result.mrd_count,
        "gab_count": result.gab_count,
        "per_s_gab_counts": {str(s): c for s, c in sorted(result.per_s_gab_counts.items())},
    })
    if args.csv:
        experiments.write_csv(args.csv, experiments.CENSUS_CSV_FIELDS,
                              experiments.census_rows(result))
    return EXIT_OK


def _cmd_verify(args):
    report = experiments.verify_lemma_suite(args.suite)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _cmd_figure(args):
    fields, rows = experiments.figure_data(
        args.id, q=args.q, k=args.k, n=args.n,
        m_values=range(args.m_from, args.m_to + 1),
        trials=args.trials, seed=args.seed, workers=args.workers)
    experiments.write_csv(args.csv, fields, rows)
    print(f"wrote {len(rows)} rows to {args.csv}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankforge",
        description="Construct, classify and count linear rank-metric codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="resolve and print a field tower")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--modulus-file", help="JSON file with base_modulus/ext_modulus")
    p.set_defaults(func=_cmd_field_info)

    p = sub.add_parser("gen-gabidulin", help="emit a generalized Gabidulin code")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--g-file", help="JSON list of evaluation points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", action="store_true",
                   help="verify the maximal-distance property before printing")
    p.set_defaults(func=_cmd_gen_gabidulin)

    p = sub.add_parser("check", help="classify a code file")
    p.add_argument("--code-file", required=True)
    p.add_argument("--what", choices=["mrd", "gabidulin", "both"], default="both")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("bounds", help="evaluate the probability bounds")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-from", type=int, required=True)
    p.add_argument("--m-to", type=int, required=True)
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("simulate", help="Monte-Carlo classification of random codes")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", help="append a schema-versioned row to this file")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("census", help="exhaustive classification of all systematic blocks")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--resume", help="checkpoint file to write to and resume from")
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("verify", help="run the lemma-verification suites")
    p.add_argument("--suite", default="all",
                   choices=["all", "trace", "intersection", "phi", "r1", "deg", "criteria"])
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("figure", help="emit CSV data behind the bound/experiment figures")
    p.add_argument("--id", type=int, required=True, choices=[1, 2, 3])
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m-from", type=int, default=4)
    p.add_argument("--m-to", type=int, default=14)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=_cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (InvalidParameterError, SpecMismatchError, ShapeError,
            ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except RankforgeError as exc:  # pragma: no cover - safety net
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
