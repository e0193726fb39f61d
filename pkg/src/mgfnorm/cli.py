"""Command-line front end.

Subcommands::

    mgfnorm test data.csv --gamma 2.5,5,inf --reps 10000
    mgfnorm critvals --n 50 --d 2 --gamma 5 --reps 100000
    mgfnorm power --stat T:gamma=inf --alt nmix1:d=2 --n 50 --reps 10000
    mgfnorm tables T2 --subset n=20,d=1 --reps 100000 --seed 7

Input data is a CSV of observations (rows) by coordinates (columns),
comma-separated, with an optional single header row detected by a
non-numeric first line. Reports go to stdout or --out, as text (default),
json, or csv. Exit codes: 0 success, 2 malformed input data, 3 singular
sample covariance, 4 invalid request (bad statistic, table id, flag
combination).
"""

import argparse
import datetime
import json
import math
import sys

from . import __version__
from .errors import MGFNormError, SingularCovariance
from .montecarlo import (
    DESK_REPS_CRITVAL,
    DESK_REPS_POWER,
    GAMMA_GRID,
    estimate_critical_value,
    estimate_power,
    evaluate_statistic,
    expand_battery,
    mc_p_value,
    parse_stat,
    reproduce_table,
)
from .residuals import scaled_residuals
from .sampling import RNG_ALGORITHM, parse_alternative


class CSVError(Exception):
    pass


def read_data_csv(path):
    """Observations-by-coordinates matrix from a CSV file.

    A single leading header row is skipped when its first line fails to
    parse as numbers. Errors name the offending line (1-based, counting
    the header).
    """
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CSVError("cannot read %s: %s" % (path, exc))
    body = [
        (i + 1, line) for i, line in enumerate(lines) if line.strip()
    ]
    if not body:
        raise CSVError("%s: no data rows" % path)

    def parse_row(line):
        return [float(cell) for cell in line.split(",")]

    start = 0
    try:
        parse_row(body[0][1])
    except ValueError:
        start = 1
        if len(body) == 1:
            raise CSVError("%s: header but no data rows" % path)
    rows = []
    width = None
    for lineno, line in body[start:]:
        try:
            row = parse_row(line)
        except ValueError:
            raise CSVError("%s: line %d: non-numeric cell" % (path, lineno))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise CSVError(
                "%s: line %d: expected %d columns, got %d"
                % (path, lineno, width, len(row))
            )
        rows.append(row)
    return rows


def write_data_csv(path, data, header=None):
    """Write a matrix so that a read-back reproduces every float bitwise."""
    with open(path, "w") as fh:
        if header:
            fh.write(",".join(header) + "\n")
        for row in data:
            fh.write(",".join("%.17g" % v for v in row) + "\n")


def _parse_gamma_list(text):
    out = []
    for token in str(text).split(","):
        token = token.strip().lower()
        if not token:
            continue
        out.append(float("inf") if token in ("inf", "infinity") else float(token))
    if not out:
        raise ValueError("empty gamma list")
    return out


def _json_safe(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _result_row(statistic, gamma=None, value=None, scaled=None, p_value=None,
                std_error=None):
    return {
        "statistic": statistic,
        "gamma": _json_safe(gamma),
        "value": value,
        "scaled": scaled,
        "p_value": p_value,
        "std_error": std_error,
    }


def _provenance(args):
    return {
        "seed": args.seed,
        "reps": args.reps,
        "algorithm": RNG_ALGORITHM,
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _config_dict(args):
    skip = ("func", "out", "format")
    cfg = {}
    for key, val in sorted(vars(args).items()):
        if key in skip or callable(val):
            continue
        if isinstance(val, list):
            val = [_json_safe(v) for v in val]
        cfg[key] = _json_safe(val)
    return cfg


def _emit(args, report):
    fmt = args.format
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        text = _report_csv(report)
    else:
        text = _report_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


_COLS = ("statistic", "gamma", "value", "scaled", "p_value", "std_error")


def _fmt_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _report_csv(report):
    lines = []
    if "results" in report:
        lines.append(",".join(_COLS))
        for row in report["results"]:
            lines.append(",".join(_fmt_cell(row[c]) for c in _COLS))
    else:
        lines.append("table,row,column,statistic,reference,value,deviation")
        for row in report["rows"]:
            for cell in row["cells"]:
                dev = cell.get("deviation", cell.get("rel_deviation"))
                lines.append(",".join(_fmt_cell(v) for v in (
                    report["table"], row["row"], cell["column"],
                    cell["statistic"], cell["reference"], cell["value"], dev,
                )))
    return "\n".join(lines) + "\n"


def _report_text(report):
    lines = []
    if "results" in report:
        header = "%-16s %8s %14s %14s %10s %10s" % _COLS
        lines.append(header)
        for row in report["results"]:
            lines.append("%-16s %8s %14s %14s %10s %10s" % tuple(
                _text_cell(row[c]) for c in _COLS
            ))
    else:
        lines.append("%s (%s), reps=%d, seed=%d"
                     % (report["table"], report["kind"], report["reps"],
                        report["seed"]))
        for row in report["rows"]:
            lines.append(row["row"])
            for cell in row["cells"]:
                dev = cell.get("deviation", cell.get("rel_deviation"))
                lines.append("  %-10s reference=%-10s value=%-12s deviation=%s"
                             % (cell["column"], _text_cell(cell["reference"]),
                                _text_cell(cell["value"]), _text_cell(dev)))
    return "\n".join(lines) + "\n"


def _text_cell(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return "%.6g" % v
    return str(v)


def _battery(args):
    specs = [parse_stat(s, args.allow_small_gamma)
             for token in args.stat for s in token.split(";") if s.strip()]
    return expand_battery(specs, args.gamma)


def cmd_test(args):
    rows = read_data_csv(args.input)
    res = scaled_residuals(rows)
    results = []
    for spec in _battery(args):
        raw, scaled = evaluate_statistic(spec, res, args.allow_small_gamma)
        pv = mc_p_value(spec, scaled, res.n, res.d, reps=args.reps,
                        seed=args.seed, cache_dir=args.cache_dir)
        results.append(_result_row(
            spec.canonical(), gamma=spec.gamma, value=raw, scaled=scaled,
            p_value=pv.value, std_error=pv.std_error,
        ))
    report = {
        "command": "test",
        "config": _config_dict(args),
        "results": results,
        "provenance": _provenance(args),
    }
    return _emit(args, report)


def cmd_critvals(args):
    results = []
    for spec in _battery(args):
        r = estimate_critical_value(
            spec, args.n, args.d, alpha=args.alpha, reps=args.reps,
            seed=args.seed, cache_dir=args.cache_dir,
        )
        results.append(_result_row(
            spec.canonical(), gamma=spec.gamma, value=r.value,
            std_error=r.std_error,
        ))
    report = {
        "command": "critvals",
        "config": _config_dict(args),
        "results": results,
        "provenance": _provenance(args),
    }
    return _emit(args, report)


def cmd_power(args):
    alt = parse_alternative(args.alt)
    results = []
    for spec in _battery(args):
        r = estimate_power(
            spec, alt, args.n, d=args.d, alpha=args.alpha, reps=args.reps,
            seed=args.seed, cache_dir=args.cache_dir,
        )
        results.append(_result_row(
            spec.canonical(), gamma=spec.gamma, value=r.value,
            std_error=r.std_error,
        ))
    report = {
        "command": "power",
        "config": _config_dict(args),
        "results": results,
        "provenance": _provenance(args),
    }
    return _emit(args, report)


def cmd_tables(args):
    report = reproduce_table(
        args.table, reps=args.reps, seed=args.seed, subset=args.subset,
        cache_dir=args.cache_dir,
    )
    report["command"] = "tables"
    report["config"] = _config_dict(args)
    report["provenance"] = _provenance(args)
    return _emit(args, report)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mgfnorm",
        description="Affine-invariant normality tests built on the empirical"
                    " moment generating function.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, reps_default):
        p.add_argument("--gamma", type=_parse_gamma_list, default=list(GAMMA_GRID),
                       help="comma-separated gamma values; inf selects the limit statistic")
        p.add_argument("--alpha", type=float, default=0.05)
        p.add_argument("--reps", type=int, default=reps_default)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--stat", action="append", default=None,
                       help="statistic spec, repeatable (default: T over the gamma list)")
        p.add_argument("--out", default=None, help="write the report to this path")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--allow-small-gamma", action="store_true",
                       dest="allow_small_gamma")
        p.add_argument("--cache-dir", default=None, dest="cache_dir",
                       help="directory for persistent null-distribution tables")

    p = sub.add_parser("test", help="test a CSV dataset for normality")
    p.add_argument("input", help="CSV file, observations as rows")
    common(p, DESK_REPS_POWER)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("critvals", help="estimate null critical values")
    common(p, DESK_REPS_CRITVAL)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(func=cmd_critvals)

    p = sub.add_parser("power", help="estimate power against an alternative")
    common(p, DESK_REPS_POWER)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None,
                   help="dimension (defaults to the alternative's)")
    p.add_argument("--alt", required=True,
                   help="alternative spec, e.g. nmix1:d=2 or chisq:k=5,d=3,onemarg")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("tables", help="reproduce a published reference grid")
    p.add_argument("table", help="one of T2, T3, T4, T5, T6")
    common(p, None)
    p.add_argument("--subset", default=None,
                   help="row/column filter, e.g. n=50,d=1 or stat=T10,row=NMIX1")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "stat", None) is None:
        args.stat = ["T"]
    try:
        return args.func(args)
    except CSVError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except SingularCovariance as exc:
        print("error: singular sample covariance: %s" % exc, file=sys.stderr)
        return 3
    except (MGFNormError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
