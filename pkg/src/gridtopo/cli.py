"""Command-line interface emitting plot-ready CSV/JSON artifacts."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .communities import assignment_to_csv, detect_communities
from .degree_fit import FitNotConverged, build_ccdf, compare_fits, fit_model, fit_result_to_json
from .evolution import compute_metrics_record, compute_timeseries, correlate_with_line_count
from .generators import GENERATOR_KINDS, GeneratorSpec, generate
from .graphs import build_snapshot, to_edgelist
from .grid_log import load_log
from .metrics import METRICS_CSV_HEADER, degree_stats

DEFAULT_SEED = 42


def _write_output(text: str, out_path: str | None) -> None:
    """Write to stdout, or atomically (temp file + rename) to a path."""
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".gridtopo-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, out_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def _add_log_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nodes", required=True, help="path to nodes.csv")
    parser.add_argument("--edges", required=True, help="path to edges.csv")


def _add_common(parser: argparse.ArgumentParser, formats: tuple[str, ...] = ("csv", "json")) -> None:
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--format", choices=formats, default=formats[0])
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def _year_range(args) -> range:
    if args.year_to < args.year_from:
        raise ValueError(f"--to {args.year_to} is before --from {args.year_from}")
    return range(args.year_from, args.year_to + 1)


def _cmd_snapshot(args) -> int:
    log = load_log(args.nodes, args.edges)
    record = compute_metrics_record(build_snapshot(log, args.year), args.seed)
    if args.format == "json":
        text = json.dumps(record.as_dict(), indent=2) + "\n"
    else:
        text = METRICS_CSV_HEADER + "\n" + record.to_csv_row() + "\n"
    _write_output(text, args.out)
    return 0


def _cmd_timeseries(args) -> int:
    log = load_log(args.nodes, args.edges)
    series = compute_timeseries(log, _year_range(args), args.seed)
    if args.format == "json":
        text = json.dumps([r.as_dict() for r in series.records], indent=2) + "\n"
    else:
        text = series.to_csv()
    _write_output(text, args.out)
    return 0


def _cmd_fit(args) -> int:
    log = load_log(args.nodes, args.edges)
    snapshot = build_snapshot(log, args.year)
    ccdf = build_ccdf(degree_stats(snapshot).histogram)
    if args.model == "both":
        if args.format != "json":
            raise ValueError("--model both supports only --format json")
        comparison = compare_fits(ccdf)
        payload = {
            "power_law": json.loads(fit_result_to_json(comparison.power_law)),
            "exponential": json.loads(fit_result_to_json(comparison.exponential)),
            "preferred": comparison.preferred,
            "tail_residuals": [
                {
                    "degree": t.degree,
                    "p": t.p,
                    "power_law_residual": t.power_law_residual,
                    "exponential_residual": t.exponential_residual,
                }
                for t in comparison.tail_residuals
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        result = fit_model(ccdf, args.model)
        if args.format == "json":
            text = fit_result_to_json(result) + "\n"
        else:
            text = (
                "model,a,gamma_or_kappa,sse,r_squared\n"
                f"{result.model},{result.a!r},{result.gamma_or_kappa!r},{result.sse!r},{result.r_squared!r}\n"
            )
    _write_output(text, args.out)
    return 0


def _cmd_correlate(args) -> int:
    log = load_log(args.nodes, args.edges)
    voltages = [int(v) for v in args.voltages.split(",") if v.strip()]
    report = correlate_with_line_count(
        log, args.metric, voltages, args.domestic_only, _year_range(args), args.seed
    )
    if args.out is not None:
        lines = [f"year,{report.metric},line_count"]
        for year, value, count in zip(report.years, report.metric_values, report.line_counts):
            lines.append(f"{year},{value!r},{count}")
        _write_output("\n".join(lines) + "\n", args.out)
    dropped = ",".join(str(y) for y in report.dropped_years)
    sys.stdout.write(
        f"metric={report.metric}\n"
        f"r={report.r!r}\n"
        f"years_used={len(report.years)}\n"
        f"dropped_years={dropped}\n"
    )
    return 0


def _cmd_generate(args) -> int:
    spec = GeneratorSpec(kind=args.kind, n=args.n, p=args.p, k=args.k, m=args.m, seed=args.seed)
    _write_output(to_edgelist(generate(spec)), args.out)
    return 0


def _cmd_communities(args) -> int:
    log = load_log(args.nodes, args.edges)
    snapshot = build_snapshot(log, args.year)
    assignment = detect_communities(snapshot, args.seed, args.restarts)
    _write_output(assignment_to_csv(snapshot, assignment), args.out)
    if args.out is not None:
        sys.stdout.write(
            f"q={assignment.achieved_q!r}\n"
            f"communities={assignment.num_communities}\n"
            f"method={assignment.method_tag}\n"
        )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridtopo",
        description="Temporal complex-network analytics for grid commission/decommission logs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snapshot", help="metric row for one year")
    _add_log_arguments(p)
    p.add_argument("--year", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_snapshot)

    p = sub.add_parser("timeseries", help="metric rows for a year range")
    _add_log_arguments(p)
    p.add_argument("--from", dest="year_from", type=int, required=True)
    p.add_argument("--to", dest="year_to", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_timeseries)

    p = sub.add_parser("fit", help="fit decay models to one year's degree CCDF")
    _add_log_arguments(p)
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--model", choices=("power_law", "exponential", "both"), default="both")
    _add_common(p, formats=("json", "csv"))
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("correlate", help="correlate a metric with line counts")
    _add_log_arguments(p)
    p.add_argument("--metric", default="sigma")
    p.add_argument("--voltages", required=True, help="comma separated kV levels, e.g. 220,400")
    p.add_argument("--domestic-only", action="store_true")
    p.add_argument("--from", dest="year_from", type=int, required=True)
    p.add_argument("--to", dest="year_to", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="write the paired series CSV here")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("generate", help="emit a seeded reference graph as an edge list")
    p.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("communities", help="export one year's community assignment")
    _add_log_arguments(p)
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_communities)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, FitNotConverged) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
