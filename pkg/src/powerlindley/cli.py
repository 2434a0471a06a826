"""Command line front end (installed as `plfit`).

Subcommands: analyze, fit, stieltjes, plot-data, sample. Input tables are
CSV files with header ``value,frequency`` (lines starting with ``#`` are
ignored); the names ``dit-system`` and ``noc-system`` load the embedded
datasets. Plot data is emitted as CSV with header ``series,x,y``.

Exit codes: 0 success, 2 usage or input error, 3 domain refusal,
4 numerical failure. The environment variable PLFIT_QUAD_RTOL overrides the
default quadrature relative tolerance.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import datasets
from .distribution import PLParams, RandomSource, pl_pdf, pl_sample, weibull_pdf
from .errors import (
    AccuracyError,
    DomainError,
    FitError,
    NormalizationError,
    OptimizationError,
    ParseError,
    PowerLindleyError,
)
from .fitting import FitObjective, FrequencyTable, fit, normalize_table
from .moment_analysis import analyze
from .stieltjes import (
    StieltjesMember,
    density_cutoff,
    perturbation,
    stieltjes_density,
    verify_vanishing_moments,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REFUSED = 3
EXIT_NUMERICAL = 4


@dataclass(frozen=True)
class PlotSeries:
    label: str
    points: tuple

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        xs = [x for x, _ in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise DomainError("series x values must be strictly increasing")


def write_plot_series(series_list, fh):
    fh.write("series,x,y\n")
    for series in series_list:
        for x, y in series.points:
            fh.write(f"{series.label},{x:.12g},{y:.12g}\n")


def read_table(source):
    """Load a frequency table from an embedded name or a CSV path."""
    if source in datasets.EMBEDDED:
        text = datasets.EMBEDDED[source]
        name = source
    else:
        text = Path(source).read_text(encoding="utf-8")
        name = Path(source).stem
    rows = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = next(csv.reader([line]))
        if not header_seen:
            if [f.strip().lower() for f in fields] != ["value", "frequency"]:
                raise ParseError("expected header 'value,frequency'", line=lineno)
            header_seen = True
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", line=lineno)
        try:
            rows.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise ParseError(f"could not parse row {line!r}", line=lineno) from None
    if not header_seen or not rows:
        raise ParseError("no data rows found")
    return FrequencyTable(tuple(rows), name=name)


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be at least 1")
    return value


def _range_pair(text):
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("range must look like LO:HI")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError("range bounds must be numbers") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError("range requires LO < HI")
    return lo, hi


def _fmt(x):
    return f"{x:.6g}"


def cmd_analyze(args):
    report = analyze(PLParams(args.alpha, args.beta))
    verdict = "moment-determinate" if report.determinate else "moment-indeterminate"
    if report.cf_class == "entire":
        line = (f"entire, order {_fmt(report.order)}, type {_fmt(report.type)}, "
                f"mgf on (-inf, inf), {verdict}")
    elif report.cf_class == "analytic-on-interval":
        lo, hi = report.mgf_interval
        line = f"analytic on ({_fmt(lo)}, {_fmt(hi)}), {verdict}"
    else:
        tail = "heavy-tailed" if report.heavy_tailed else "light-tailed"
        line = f"not analytic at 0, mgf does not exist, {tail}, {verdict}"
    print(f"characteristic function of PL({_fmt(args.alpha)}, {_fmt(args.beta)}): {line}")
    return EXIT_OK


def _objective_from_args(args):
    kind = {"binned": "binned-mass", "pdf": "pdf-at-values",
            "pdf-shifted": "pdf-at-shifted"}[args.objective]
    return FitObjective(kind=kind, shift=args.shift)


def _report_row(report):
    p = report.params
    pair = (p.alpha, p.beta) if report.model == "power-lindley" else (p.shape, p.scale)
    note = ""
    if report.model == "power-lindley" and p.alpha < 0.5:
        note = "moment-indeterminate (alpha < 1/2)"
    return {
        "model": report.model,
        "alpha": pair[0],
        "beta": pair[1],
        "error": report.error,
        "mean": report.mean,
        "median": report.median,
        "sample_mean": report.sample_mean,
        "mean_gap": report.mean_gap,
        "notes": note,
    }


def _emit_fit_rows(rows, objective, fmt):
    if fmt == "json":
        print(json.dumps({"objective": objective.kind, "rows": rows}, indent=2))
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        print(buf.getvalue(), end="")
        return
    print(f"objective: {objective.kind}")
    header = f"{'model':<14}{'shape':>10}{'rate/scale':>12}{'error':>12}" \
             f"{'mean':>10}{'median':>10}{'|xbar-mean|':>13}"
    print(header)
    for row in rows:
        print(f"{row['model']:<14}{row['alpha']:>10.4f}{row['beta']:>12.4f}"
              f"{row['error']:>12.3e}{row['mean']:>10.4f}{row['median']:>10.4f}"
              f"{row['mean_gap']:>13.4f}")
        if row["notes"]:
            print(f"    note: {row['notes']}")


def cmd_fit(args):
    table = read_table(args.data)
    objective = _objective_from_args(args)
    total = table.frequencies.sum()
    if not args.weights_are_proportions and abs(total - 100.0) < 5.0:
        print(f"# frequencies interpreted as percentages (total {total:.4g})",
              file=sys.stderr)
    models = ["power-lindley", "weibull"] if args.model == "both" else \
        ["power-lindley" if args.model == "pl" else "weibull"]
    reports = [fit(table, m, objective) for m in models]
    rows = [_report_row(r) for r in reports]
    _emit_fit_rows(rows, objective, args.format)
    if len(reports) == 2:
        by_model = {r.model: r.error for r in reports}
        better = min(by_model, key=by_model.get)
        print(f"# verdict: {better} has the smaller {objective.kind} error "
              f"(power-lindley {_fmt(by_model['power-lindley'])}, "
              f"weibull {_fmt(by_model['weibull'])})")
    return EXIT_OK


def cmd_stieltjes(args):
    if args.alpha >= 0.5:
        print("refused: alpha must be < 1/2 (the distribution is "
              "moment-determinate for alpha >= 1/2, so no Stieltjes class exists)",
              file=sys.stderr)
        return EXIT_REFUSED
    params = PLParams(args.alpha, args.beta)
    spec = perturbation(f"H{args.which}", params, b=args.b, gamma=args.gamma)
    residuals = verify_vanishing_moments(spec, args.kmax)
    print(f"family H{args.which}, M = {spec.M:.12g}")
    print("k residual")
    for k, r in enumerate(residuals):
        print(f"{k} {r:.3e}")
    if args.emit_density:
        lo, hi = args.range if args.range else (0.0, density_cutoff(params) ** 0.5)
        xs = np.linspace(lo, hi, args.points)
        member = StieltjesMember(spec, args.epsilon)
        ys = stieltjes_density(member, xs)
        series = PlotSeries(f"f_eps={_fmt(args.epsilon)}", tuple(zip(xs, ys)))
        with open(args.emit_density, "w", encoding="utf-8") as fh:
            write_plot_series([series], fh)
        print(f"# wrote density curve to {args.emit_density}")
    return EXIT_OK


def cmd_plot_data(args):
    table = read_table(args.data)
    lo, hi = args.range
    n = args.points
    weights = normalize_table(table)
    series = [PlotSeries("data", tuple(zip(table.values, weights)))]
    xs = np.linspace(lo, hi, n)
    objective = _objective_from_args(args)
    overlays = [s.strip() for s in args.overlay.split(",") if s.strip()]
    for name in overlays:
        if name == "fitted-pl":
            report = fit(table, "power-lindley", objective)
            ys = pl_pdf(report.params, xs)
        elif name == "fitted-weibull":
            report = fit(table, "weibull", objective)
            ys = weibull_pdf(report.params, xs)
        else:
            print(f"unknown overlay {name!r} (use fitted-pl, fitted-weibull)",
                  file=sys.stderr)
            return EXIT_USAGE
        series.append(PlotSeries(name, tuple(zip(xs, ys))))
    write_plot_series(series, sys.stdout)
    return EXIT_OK


def cmd_sample(args):
    params = PLParams(args.alpha, args.beta)
    draws = pl_sample(params, args.n, RandomSource(args.seed))
    for value in draws:
        print(f"{value:.17g}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plfit",
        description="Power Lindley distribution toolkit: analysis, fitting, "
                    "Stieltjes class verification, sampling, plot data.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify analyticity and moment determinacy")
    p.add_argument("--alpha", type=_positive_float, required=True)
    p.add_argument("--beta", type=_positive_float, required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fit", help="least-squares fit of a frequency table")
    p.add_argument("--data", required=True,
                   help="CSV path or embedded name (dit-system, noc-system)")
    p.add_argument("--model", choices=["pl", "weibull", "both"], default="both")
    p.add_argument("--objective", choices=["binned", "pdf", "pdf-shifted"],
                   default="binned")
    p.add_argument("--shift", type=_positive_float, default=0.5)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--weights-are-proportions", action="store_true",
                   help="suppress the percentage auto-detection note")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("stieltjes",
                       help="verify vanishing moments of a perturbation family")
    p.add_argument("--alpha", type=_positive_float, required=True)
    p.add_argument("--beta", type=_positive_float, required=True)
    p.add_argument("--which", type=int, choices=[1, 2, 3], default=1)
    p.add_argument("--b", type=_positive_float, default=1.0)
    p.add_argument("--gamma", type=_positive_float, default=None)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--emit-density", default=None, metavar="PATH")
    p.add_argument("--range", type=_range_pair, default=None)
    p.add_argument("--points", type=_positive_int, default=256)
    p.set_defaults(func=cmd_stieltjes)

    p = sub.add_parser("plot-data", help="emit data points and fitted model curves")
    p.add_argument("--data", required=True)
    p.add_argument("--overlay", default="fitted-pl,fitted-weibull")
    p.add_argument("--range", type=_range_pair, required=True, metavar="LO:HI")
    p.add_argument("--points", type=_positive_int, default=200)
    p.add_argument("--objective", choices=["binned", "pdf", "pdf-shifted"],
                   default="binned")
    p.add_argument("--shift", type=_positive_float, default=0.5)
    p.set_defaults(func=cmd_plot_data)

    p = sub.add_parser("sample", help="draw deterministic samples")
    p.add_argument("--alpha", type=_positive_float, required=True)
    p.add_argument("--beta", type=_positive_float, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (AccuracyError, FitError, OptimizationError, NormalizationError,
            OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PowerLindleyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
