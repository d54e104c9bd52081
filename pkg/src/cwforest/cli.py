"""Command-line interface.

Exit codes: 0 on success, 1 on usage or parse errors, 2 when a ``check``
suite finds a violation.  Every subcommand writes CSV (default) or JSON.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import analysis
from .contfrac import cf_decode, cf_encode, format_cf, parse_cf
from .rational import DEFAULT_PRECISION, MIN_PRECISION, Enclosure, parse_rational, rat_str
from .rows import DEFAULT_DIGIT_BUDGET, DigitBudgetExceeded, Mode, cf_length_counts, mean_series, predicted_cf_length_counts
from .tree import TreeParams, depth_from_cf, is_descendant, locate

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _nonneg_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def _add_params(p, required=True):
    p.add_argument("--u", type=_positive_int, required=required, default=None if required else 1)
    p.add_argument("--v", type=_positive_int, required=required, default=None if required else 1)


def _add_mode(p):
    p.add_argument("--mode", choices=("exact", "enclosure"), default="exact")
    p.add_argument("--precision", type=int, default=None,
                   help=f"enclosure precision in bits (default {DEFAULT_PRECISION})")
    p.add_argument("--workers", type=_positive_int, default=None)
    p.add_argument("--digit-budget", type=_positive_int, default=DEFAULT_DIGIT_BUDGET)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cwforest", description="(u,v)-Calkin-Wilf tree toolkit")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default=None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("row", parents=[common], help="stream the vertices of a row")
    _add_params(p)
    p.add_argument("--root", type=_rational, required=True)
    p.add_argument("--depth", type=_nonneg_int, required=True)
    p.add_argument("--limit", type=_nonneg_int, default=None)

    p = sub.add_parser("mean", parents=[common], help="row sums and means up to a depth")
    _add_params(p)
    p.add_argument("--root", type=_rational, required=True)
    p.add_argument("--max-depth", type=_nonneg_int, required=True)
    _add_mode(p)

    p = sub.add_parser("locate", parents=[common], help="root, depth and path of a rational")
    _add_params(p)
    p.add_argument("value", type=_rational)

    p = sub.add_parser("descendant", parents=[common], help="continued-fraction descendant test")
    _add_params(p)
    p.add_argument("--ancestor", type=_rational, required=True)
    p.add_argument("--query", type=_rational, required=True)

    p = sub.add_parser("cf", parents=[common], help="continued fraction codec")
    p.add_argument("value", nargs="?", type=_rational)
    p.add_argument("--decode", default=None)

    p = sub.add_parser("cflen-hist", parents=[common], help="length histogram vs prediction")
    _add_params(p)
    p.add_argument("--root", type=_rational, required=True)
    p.add_argument("--depth", type=_nonneg_int, required=True)
    p.add_argument("--variant", choices=("paper", "corrected"), default="corrected")

    p = sub.add_parser("converge", parents=[common], help="convergence report per root")
    _add_params(p)
    p.add_argument("--roots", default=None, help="comma-separated rationals (default 1/u,v)")
    p.add_argument("--max-depth", type=_nonneg_int, required=True)
    _add_mode(p)

    p = sub.add_parser("decay", parents=[common], help="decay of mean differences")
    _add_params(p)
    p.add_argument("--z1", type=_rational, required=True)
    p.add_argument("--z2", type=_rational, required=True)
    p.add_argument("--max-depth", type=_nonneg_int, required=True)
    p.add_argument("--window", type=_positive_int, default=6)
    p.add_argument("--workers", type=_positive_int, default=None)

    p = sub.add_parser("check", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=("partition", "symmetry", "monotonicity", "mcount", "closed-form-11"))
    _add_params(p, required=False)
    p.add_argument("--max-depth", type=_nonneg_int, default=None)
    p.add_argument("--max-den", type=_positive_int, default=40)
    p.add_argument("--variant", choices=("paper", "corrected"), default="corrected")
    p.add_argument("--workers", type=_positive_int, default=None)
    return parser


# -- output ---------------------------------------------------------------------

def _emit(args, doc: dict, rows: list[dict], columns: list[str]) -> None:
    if args.format == "json":
        text = json.dumps({"schema_version": SCHEMA_VERSION, **doc}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args) -> TreeParams:
    return TreeParams(args.u, args.v)


def _workers(args) -> int:
    if args.workers is not None:
        return args.workers
    n = _env_int("CWFOREST_WORKERS", os.cpu_count() or 1)
    if n < 1:
        raise UsageError("CWFOREST_WORKERS must be >= 1")
    return n


def _mode(args) -> Mode:
    prec = args.precision
    if prec is None:
        prec = _env_int("CWFOREST_PRECISION_BITS", DEFAULT_PRECISION)
    if prec < MIN_PRECISION:
        raise UsageError(f"precision must be >= {MIN_PRECISION} bits")
    return Mode(args.mode, prec, args.digit_budget)


def _bounds(x):
    if isinstance(x, Enclosure):
        d = x.to_json()
        return d["lo"], d["hi"]
    return rat_str(x), rat_str(x)


# -- commands -------------------------------------------------------------------

def cmd_row(args):
    rows = list(analysis.row_records(args.root, args.depth, _params(args), args.limit))
    doc = {"u": args.u, "v": args.v, "root": rat_str(args.root), "depth": args.depth,
           "vertices": rows}
    _emit(args, doc, rows, ["index", "value", "cf", "int_part", "cf_length"])
    return 0


def cmd_mean(args):
    p, mode = _params(args), _mode(args)
    limit = analysis.limit_estimate(p)
    rows = []
    for n, (S, A) in enumerate(mean_series(args.root, args.max_depth, p, mode, _workers(args))):
        gap = limit - (A if isinstance(A, Enclosure) else Enclosure.from_bounds(A, A, limit.precision))
        S_lo, S_hi = _bounds(S)
        A_lo, A_hi = _bounds(A)
        g = gap.to_json()
        rows.append({"n": n, "S_lo": S_lo, "S_hi": S_hi, "A_lo": A_lo, "A_hi": A_hi,
                     "gap_lo": g["lo"], "gap_hi": g["hi"]})
    doc = {"u": p.u, "v": p.v, "root": rat_str(args.root), "mode": mode.kind,
           "precision_bits": mode.precision, "limit": limit.to_json(), "rows": rows}
    _emit(args, doc, rows, ["n", "S_lo", "S_hi", "A_lo", "A_hi", "gap_lo", "gap_hi"])
    return 0


def cmd_locate(args):
    root, depth, path = locate(args.value, _params(args))
    row = {"value": rat_str(args.value), "root": rat_str(root), "depth": depth,
           "path": path or "(root)"}
    _emit(args, {**row, "path": path}, [row], ["value", "root", "depth", "path"])
    return 0


def cmd_descendant(args):
    p = _params(args)
    ok = is_descendant(args.ancestor, args.query, p)
    row = {"ancestor": rat_str(args.ancestor), "query": rat_str(args.query),
           "descendant": ok, "depth": depth_from_cf(args.ancestor, args.query, p) if ok else None}
    _emit(args, row, [{**row, "descendant": str(ok).lower(),
                       "depth": "" if row["depth"] is None else row["depth"]}],
          ["ancestor", "query", "descendant", "depth"])
    return 0


def cmd_cf(args):
    if args.decode is not None:
        coeffs = parse_cf(args.decode)
        x = cf_decode(coeffs)
    elif args.value is not None:
        x = args.value
        coeffs = cf_encode(x)
    else:
        raise UsageError("cf needs a value A/B or --decode")
    canon = cf_encode(x)
    row = {"value": rat_str(x), "cf": format_cf(canon), "cf_length": len(canon) - 1}
    _emit(args, {**row, "cf": list(canon), "input_cf": list(coeffs)}, [row],
          ["value", "cf", "cf_length"])
    return 0


def cmd_cflen_hist(args):
    p = _params(args)
    variant = "paper_literal" if args.variant == "paper" else "corrected"
    seen = cf_length_counts(args.root, args.depth, p)
    pred = predicted_cf_length_counts(args.root, args.depth, p, variant)
    rows = [{"m": m, "observed": seen.get(m, 0), "predicted": pred.get(m, 0)}
            for m in sorted(set(seen) | set(pred))]
    doc = {"u": p.u, "v": p.v, "root": rat_str(args.root), "depth": args.depth,
           "variant": variant, "observed": {str(k): c for k, c in seen.items()},
           "predicted": {str(k): c for k, c in pred.items()}, "match": seen == pred}
    _emit(args, doc, rows, ["m", "observed", "predicted"])
    return 0


def cmd_converge(args):
    p, mode = _params(args), _mode(args)
    if args.roots:
        try:
            roots = [parse_rational(r) for r in args.roots.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc))
    else:
        roots = sorted({Fraction(1, p.u), Fraction(p.v)})
    reports, rows = [], []
    for z in roots:
        rep = analysis.convergence_report(z, p, args.max_depth, mode, _workers(args))
        reports.append(rep.to_json())
        rows.extend({"root": rat_str(z), **r} for r in rep.csv_rows())
    _emit(args, {"reports": reports}, rows, ["root", "n", "A_lo", "A_hi", "gap_lo", "gap_hi"])
    return 0


def cmd_decay(args):
    p = _params(args)
    rep = analysis.mean_difference_decay(args.z1, args.z2, p, args.max_depth,
                                         args.window, _workers(args))
    ratio = "" if rep.ratio is None else f"{rep.ratio:.6f}"
    rows = [{**r, "fitted_ratio": ratio} for r in rep.csv_rows()]
    doc = {"u": p.u, "v": p.v, "z1": rat_str(args.z1), "z2": rat_str(args.z2),
           "rows": rep.csv_rows(), "fitted_ratio": rep.ratio, "window": args.window}
    _emit(args, doc, rows, ["n", "diff", "diff_float", "fitted_ratio"])
    return 0


def cmd_check(args):
    p = _params(args)
    suite = args.suite
    details: list = []
    if suite == "partition":
        rep = analysis.partition_check(p, args.max_den)
        details = rep.failures
        extra = {"checked": rep.checked, "roots": sorted(rat_str(r) for r in rep.roots)}
    elif suite == "symmetry":
        n_max = 10 if args.max_depth is None else args.max_depth
        details = [f"row {n} is not symmetric" for n in analysis.symmetry_check(n_max)]
        extra = {"max_depth": n_max}
    elif suite == "monotonicity":
        n_max = 10 if args.max_depth is None else max(1, args.max_depth)
        res = analysis.monotonicity_check(p, n_max, _workers(args))
        details = [f"S(n+1) > 2S(n) fails for root {rat_str(z)}" for z, ok in res.items() if not ok]
        extra = {"max_depth": n_max, "roots": [rat_str(z) for z in res]}
    elif suite == "mcount":
        n_max = 8 if args.max_depth is None else args.max_depth
        variant = "paper_literal" if args.variant == "paper" else "corrected"
        roots = sorted({Fraction(1), Fraction(1, p.u), Fraction(p.v), Fraction(p.v + 1),
                        Fraction(1, p.u + 1)})
        bad = analysis.mcount_check(p, roots, n_max, variant)
        details = [f"root {rat_str(z)}, n={n}: predicted {pred}, observed {seen}"
                   for z, n, pred, seen in bad]
        extra = {"max_depth": n_max, "variant": variant}
    else:
        n_max = 12 if args.max_depth is None else args.max_depth
        p = TreeParams(1, 1)
        details = [f"S({n}) != {rat_str(analysis.closed_form_11(n))}"
                   for n in range(n_max + 1) if not analysis.closed_form_check_11_at(n)]
        extra = {"max_depth": n_max}
    passed = not details
    doc = {"suite": suite, "u": p.u, "v": p.v, "passed": passed, "violations": details, **extra}
    rows = [{"suite": suite, "passed": str(passed).lower(), "violation": d} for d in details] or \
        [{"suite": suite, "passed": "true", "violation": ""}]
    _emit(args, doc, rows, ["suite", "passed", "violation"])
    return 0 if passed else 2


COMMANDS = {
    "row": cmd_row, "mean": cmd_mean, "locate": cmd_locate, "descendant": cmd_descendant,
    "cf": cmd_cf, "cflen-hist": cmd_cflen_hist, "converge": cmd_converge,
    "decay": cmd_decay, "check": cmd_check,
}


def run_cli(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"cwforest: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, DigitBudgetExceeded) as exc:
        print(f"cwforest: error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run_cli())
