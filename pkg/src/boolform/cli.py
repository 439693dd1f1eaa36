"""Command-line surface; emits deterministic text, JSON, or CSV reports."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import mpmath as mp

from .boolfun import BoolFunc, InputError
from .errors import DomainError, NumericError, ResourceCapError
from .trees import ModelId, StructureError
from . import exhaustive, patterns, series, singular
from .complexity import (complexity as _complexity,
                         enumerate_expansions as _enumerate_expansions,
                         probability_vs_bounds as _probability_vs_bounds)

SCHEMA = "boolform/v1"

EXIT_USAGE = 64
EXIT_NUMERIC = 70
EXIT_RESOURCE = 75


def _model(name: str) -> ModelId:
    try:
        return ModelId(name)
    except ValueError:
        raise InputError("unknown model %r" % name)


def _emit(args, payload: dict, text: str) -> None:
    if args.out == "json":
        payload["schema"] = SCHEMA
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _cmd_count(args) -> None:
    model = _model(args.model)
    value = exhaustive.count_trees(model, args.size, args.vars)
    _emit(args, {"command": "count", "model": model.value, "m": args.size,
                 "n": args.vars, "count": str(value)}, str(value))


def _cmd_distribution(args) -> None:
    model = _model(args.model)
    dist = exhaustive.distribution(model, args.size, args.vars)
    if args.out == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["function", "count"])
        writer.writerows(dist.to_csv_rows())
        sys.stdout.write(buf.getvalue())
        return
    payload = dist.to_json_dict()
    lines = ["%s %s" % row for row in dist.to_csv_rows()]
    _emit(args, {"command": "distribution", **payload}, "\n".join(lines))


def _cmd_series(args) -> None:
    model = _model(args.model)
    if args.kind == "base":
        s = series.solve_model_series(model, args.vars, args.order)
    elif args.kind == "half":
        s = series.solve_half_series(model, args.vars, args.order)
    else:
        s = series.solve_aux_series(model, args.kind, args.vars, args.order)
    coeffs = s.to_json()
    _emit(args, {"command": "series", "model": model.value, "n": args.vars,
                 "kind": args.kind, "order": args.order, "coefficients": coeffs},
          "\n".join(coeffs))


def _cmd_singularity(args) -> None:
    model = _model(args.model)
    rep = singular.singularity_report(model, args.vars, args.precision,
                                      args.order)
    text = "\n".join("%s: %s" % (k, v) for k, v in
                     (("rho", rep["rho"]), ("value_at_rho", rep["value_at_rho"]),
                      ("method", rep["method"]),
                      ("true_const", rep["ratios"]["true_const"]),
                      ("literal_const", rep["ratios"]["literal_const"])))
    _emit(args, {"command": "singularity", **rep}, text)


def _cmd_ratio(args) -> None:
    model = _model(args.model)
    with mp.workprec(args.precision):
        w1, w2 = singular.w_rates(model, args.vars, args.precision, args.order)
        payload = {
            "command": "ratio", "model": model.value, "n": args.vars,
            "w1": mp.nstr(w1, 20), "w2": mp.nstr(w2, 20),
            "true_const": mp.nstr(
                singular.probability_true(model, args.vars, args.precision,
                                          args.order), 20),
            "literal_const": mp.nstr(
                singular.probability_literal(model, args.vars, args.precision,
                                             args.order), 20),
        }
    text = "\n".join("%s: %s" % (k, payload[k])
                     for k in ("w1", "w2", "true_const", "literal_const"))
    _emit(args, payload, text)


def _cmd_constants_table(args) -> None:
    grid = tuple(int(x) for x in args.n_grid.split(","))
    rows = []
    for model in ModelId:
        for target in ("True", "literal"):
            est, err = singular.constant_estimate(model, target, grid,
                                                  args.precision, args.order)
            ref = singular.REFERENCE_CONSTANTS[(model, target)]()
            rows.append({
                "model": model.value, "target": target,
                "computed": mp.nstr(est, 12), "errorbar": mp.nstr(err, 3),
                "published": mp.nstr(ref, 12),
                "agrees": bool(abs(est - ref) < 0.01),
            })
    header = "%-10s %-8s %-16s %-10s %-16s %s" % (
        "model", "target", "computed", "errorbar", "published", "agrees")
    lines = [header] + [
        "%-10s %-8s %-16s %-10s %-16s %s" % (
            r["model"], r["target"], r["computed"], r["errorbar"],
            r["published"], r["agrees"]) for r in rows]
    _emit(args, {"command": "constants-table", "n_grid": list(grid),
                 "rows": rows}, "\n".join(lines))


def _cmd_verify_lemmas(args) -> None:
    model = _model(args.model)
    rep = patterns.verify_pattern_lemmas(model, args.max_size, args.vars)
    status = "PASS" if rep.ok else "FAIL"
    lines = ["%s trees=%d counterexamples=%d %s"
             % (model.value, rep.trees_checked, len(rep.counterexamples), status)]
    _emit(args, {"command": "verify-lemmas", "model": model.value,
                 "max_size": args.max_size, "n": args.vars,
                 "trees_checked": rep.trees_checked,
                 "counterexamples": len(rep.counterexamples),
                 "status": status}, "\n".join(lines))
    if not rep.ok:
        sys.exit(1)


def _cmd_complexity(args) -> None:
    model = _model(args.model)
    f = BoolFunc.from_string(args.fn)
    ts = _complexity(f, model)
    if ts.L == 0:
        _emit(args, {"command": "complexity", "model": model.value,
                     "fn": args.fn, "L": 0, "M": 0},
              "L: 0 (constant function)")
        return
    tally = _enumerate_expansions(ts)
    report = _probability_vs_bounds(f, model, n_grid=(args.estimate_n,))
    payload = {
        "command": "complexity", "model": model.value, "fn": args.fn,
        "L": ts.L, "M": ts.M,
        "lambda_T": tally.lambda_T, "lambda_X": tally.lambda_X,
        "bounds": report["bounds"], "estimate": report["grid"][-1]["estimate"],
        "estimate_n": args.estimate_n,
    }
    text = "\n".join([
        "L: %d" % ts.L, "M: %d" % ts.M,
        "lambda_T: %d" % tally.lambda_T, "lambda_X: %d" % tally.lambda_X,
        "bounds: [%.10g, %.10g]%s" % (
            report["bounds"]["lower"], report["bounds"]["upper"],
            " (stated for L>1 only)" if report["bounds"]["restricted"] else ""),
        "estimate(n=%d): %.10g" % (args.estimate_n,
                                   report["grid"][-1]["estimate"]),
    ])
    _emit(args, payload, text)


def _cmd_report(args) -> None:
    model = _model(args.model)
    rep = singular.singularity_report(model, args.vars, args.precision,
                                      args.order)
    sanity = series.series_sanity(model, args.vars, min(args.order, 24))
    rep["series_sanity"] = {k: v == 0 for k, v in sanity.checks.items()}
    text = json.dumps(rep, sort_keys=True, indent=2)
    _emit(args, {"command": "report", **rep}, text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolform")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, vars_=True, order=False, precision=False):
        p.add_argument("--out", choices=("json", "csv", "text"), default="text")
        if vars_:
            p.add_argument("--vars", type=int, required=True)
        if order:
            p.add_argument("--order", type=int, default=64)
        if precision:
            p.add_argument("--precision", type=int, default=256)

    p = sub.add_parser("count")
    p.add_argument("--model", required=True)
    p.add_argument("--size", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("distribution")
    p.add_argument("--model", required=True)
    p.add_argument("--size", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_distribution)

    p = sub.add_parser("series")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", default="base",
                   choices=("base", "half") + series.AUX_KINDS)
    common(p, order=True)
    p.set_defaults(handler=_cmd_series)

    p = sub.add_parser("singularity")
    p.add_argument("--model", required=True)
    common(p, order=True, precision=True)
    p.set_defaults(handler=_cmd_singularity)

    p = sub.add_parser("ratio")
    p.add_argument("--model", required=True)
    common(p, order=True, precision=True)
    p.set_defaults(handler=_cmd_ratio)

    p = sub.add_parser("constants-table")
    p.add_argument("--n-grid", default="100,200,400")
    common(p, vars_=False, order=True, precision=True)
    p.set_defaults(handler=_cmd_constants_table)

    p = sub.add_parser("verify-lemmas")
    p.add_argument("--model", required=True)
    p.add_argument("--max-size", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_verify_lemmas)

    p = sub.add_parser("complexity")
    p.add_argument("--model", required=True)
    p.add_argument("--fn", required=True,
                   help="truth table, e.g. n:3:ea")
    p.add_argument("--estimate-n", type=int, default=200)
    common(p, vars_=False)
    p.set_defaults(handler=_cmd_complexity)

    p = sub.add_parser("report")
    p.add_argument("--model", required=True)
    common(p, order=True, precision=True)
    p.set_defaults(handler=_cmd_report)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        args.handler(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ResourceCapError as exc:
        print(json.dumps({"error": "resource", "message": str(exc)}),
              file=sys.stderr)
        return EXIT_RESOURCE
    except NumericError as exc:
        print(json.dumps({"error": "numeric", "message": str(exc)}),
              file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, DomainError, StructureError, ValueError) as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}),
              file=sys.stderr)
        return EXIT_USAGE
    return 0


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
