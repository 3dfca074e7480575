"""Command-line interface.

Exit codes: 0 success, 1 runtime failures (degenerate inputs, unreadable
files, empty pools), 2 flag or validation errors.
"""

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
from pathlib import Path

from . import simulate
from .critical import critical_value
from .distributions import (
    DistributionSpec,
    HalfNormal,
    LogNormal,
    MixtureNormal,
    Normal,
    SkewNormal,
)
from .errors import (
    DegenerateRangeError,
    IngestError,
    InvalidArgumentError,
    NoStudiesError,
    SkewsumError,
)
from .estimators import estimate_moments
from .meta import forest_csv, ingest, load_vitamin_d, meta_analyze
from .skewtests import run_test
from .sources import parse_source, source_label
from .summaries import Scenario, SummaryRecord
from .tables import dump_table_asset

DEFAULT_PORT_ENV = "SKEWSUM_PORT"

_FAILURE_ERRORS = (DegenerateRangeError, IngestError, NoStudiesError, OSError)

# The four standard skewed alternatives plus a configurable normal.
_DIST_PRESETS = {
    "normal": lambda args: Normal(*(args or [0.0, 1.0])),
    "skewnormal": lambda args: SkewNormal(*(args or [0.0, 1.0, -10.0])),
    "halfnormal": lambda args: HalfNormal(*(args or [0.0, 1.0])),
    "lognormal": lambda args: LogNormal(*(args or [0.0, 1.0])),
    "mixture": lambda args: MixtureNormal(*(args or [0.3, -2.0, 1.0, 2.0, 1.0])),
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _FAILURE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SkewsumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewsum",
        description="Skewness tests for five-number summaries, moment recovery, "
                    "and meta-analysis pooling.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="run a skewness test on one summary")
    _add_summary_flags(p_test)
    _add_source_flags(p_test)
    _add_format_flag(p_test)
    p_test.set_defaults(handler=cmd_test)

    p_est = sub.add_parser("estimate", help="estimate mean and SD from a summary")
    _add_summary_flags(p_est)
    _add_format_flag(p_est)
    p_est.set_defaults(handler=cmd_estimate)

    p_crit = sub.add_parser("critval", help="look up or simulate a critical value")
    p_crit.add_argument("--scenario", required=True)
    p_crit.add_argument("--n", type=int, required=True)
    _add_source_flags(p_crit, default_source="table")
    _add_format_flag(p_crit)
    p_crit.set_defaults(handler=cmd_critval)

    p_meta = sub.add_parser("meta", help="run the decision flow and pool a study file")
    p_meta.add_argument("--input", help="CSV/JSON study file (default: bundled dataset)")
    p_meta.add_argument("--force-include", default="",
                        help="comma-separated study ids to keep despite rejection")
    p_meta.add_argument("--forest-out", help="write the forest export CSV here")
    _add_source_flags(p_meta)
    _add_format_flag(p_meta)
    p_meta.set_defaults(handler=cmd_meta)

    p_sim = sub.add_parser("simulate", help="run a simulation experiment")
    p_sim.add_argument("--experiment", required=True,
                       choices=("type1", "power", "estimator-bias", "fixed-threshold"))
    p_sim.add_argument("--scenario", default="s1,s2,s3",
                       help="comma-separated scenarios (type1/power)")
    p_sim.add_argument("--n-grid", default="",
                       help="comma-separated sample sizes (type1/power)")
    p_sim.add_argument("--n", type=int, default=None,
                       help="sample size for estimator-bias (default 200) / fixed-threshold (default 100)")
    p_sim.add_argument("--dist", default=None,
                       help="distribution, e.g. lognormal or mixture or normal:0,1 "
                            "(power/estimator-bias)")
    p_sim.add_argument("--reps", type=int, default=100_000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--allow-off-grid", action="store_true",
                       help="accept n not of the form 4Q + 1")
    p_sim.add_argument("--out", help="directory for the output files (default: stdout)")
    _add_source_flags(p_sim)
    _add_format_flag(p_sim, default="csv")
    p_sim.set_defaults(handler=cmd_simulate)

    p_dump = sub.add_parser("dump-tables", help="print the embedded critical-value asset")
    p_dump.set_defaults(handler=lambda args: (print(dump_table_asset(), end=""), 0)[1])

    p_serve = sub.add_parser("serve", help="run the HTTP JSON API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int,
                         default=int(os.environ.get(DEFAULT_PORT_ENV, "8765")))
    p_serve.set_defaults(handler=cmd_serve)

    return parser


def _add_summary_flags(parser) -> None:
    parser.add_argument("--scenario", required=True,
                        help="s1, s2, s3, mean_sd, or mean_range")
    for name in ("a", "q1", "m", "q3", "b", "mean", "sd"):
        parser.add_argument(f"--{name}", type=float, default=None)
    parser.add_argument("--n", type=int, required=True)


def _add_source_flags(parser, default_source: str = "approx") -> None:
    parser.add_argument("--alpha", type=float, default=0.05)
    parser.add_argument("--source", default=default_source,
                        help="table, approx, asymptotic, or mc")
    parser.add_argument("--mc-reps", type=int, default=100_000)
    parser.add_argument("--mc-seed", type=int, default=0)


def _add_format_flag(parser, default: str = "text") -> None:
    parser.add_argument("--format", choices=("text", "json", "csv"), default=default)


def _summary_from_args(args) -> SummaryRecord:
    return SummaryRecord(
        scenario=Scenario.parse(args.scenario), n=args.n, a=args.a, q1=args.q1,
        m=args.m, q3=args.q3, b=args.b, mean=args.mean, sd=args.sd)


def _source_from_args(args):
    return parse_source(args.source, reps=args.mc_reps, seed=args.mc_seed)


def _emit(args, payload: dict, text: str, csv_rows: tuple) -> int:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerows(csv_rows)
        print(buf.getvalue(), end="")
    else:
        print(text)
    return 0


def cmd_test(args) -> int:
    summary = _summary_from_args(args)
    result = run_test(summary, args.alpha, _source_from_args(args))
    name = {"s1": "T1", "s2": "T2", "s3": "T3"}[result.scenario.value]
    guidance = ("exclude the study from pooling"
                if result.reject else
                "estimate the mean and SD from the summary and include the study")
    levels = []
    if result.theta1_hat is not None:
        levels.append(f"a+b-2m = {result.theta1_hat:.6g}")
    if result.theta2_hat is not None:
        levels.append(f"q1+q3-2m = {result.theta2_hat:.6g}")
    text = (f"{name} = {result.statistic:.3f}, critical = {result.critical_value:.3f} "
            f"({source_label(result.source)}, alpha = {result.alpha:g}): {result.verdict}\n"
            + (f"skew level: {'; '.join(levels)}\n" if levels else "")
            + f"flow chart: {guidance}")
    payload = {
        "scenario": result.scenario.value,
        "n": summary.n,
        "statistic": result.statistic,
        "critical_value": result.critical_value,
        "alpha": result.alpha,
        "source": source_label(result.source),
        "reject": result.reject,
        "verdict": result.verdict,
        "theta1_hat": result.theta1_hat,
        "theta2_hat": result.theta2_hat,
        "guidance": guidance,
    }
    rows = (("scenario", "n", "statistic", "critical_value", "alpha", "source",
             "reject"),
            (result.scenario.value, summary.n, repr(result.statistic),
             repr(result.critical_value), args.alpha, source_label(result.source),
             result.reject))
    return _emit(args, payload, text, rows)


def cmd_estimate(args) -> int:
    summary = _summary_from_args(args)
    est = estimate_moments(summary)
    text = (f"mean = {est.mean:.6g} ({est.mean_method})\n"
            f"sd   = {est.sd:.6g} ({est.sd_method})")
    payload = dataclasses.asdict(est)
    payload.update(scenario=summary.scenario.value, n=summary.n)
    rows = (("scenario", "n", "mean", "sd", "mean_method", "sd_method"),
            (summary.scenario.value, summary.n, repr(est.mean), repr(est.sd),
             est.mean_method, est.sd_method))
    return _emit(args, payload, text, rows)


def cmd_critval(args) -> int:
    scenario = Scenario.parse(args.scenario)
    source = _source_from_args(args)
    value = critical_value(scenario, args.n, args.alpha, source)
    label = source_label(source)
    text = f"critical value ({scenario.value}, n = {args.n}, alpha = {args.alpha:g}, {label}): {value:.4f}"
    payload = {"scenario": scenario.value, "n": args.n, "alpha": args.alpha,
               "source": label, "value": value}
    rows = (("scenario", "n", "alpha", "source", "value"),
            (scenario.value, args.n, args.alpha, label, repr(value)))
    return _emit(args, payload, text, rows)


def cmd_meta(args) -> int:
    studies = ingest(args.input) if args.input else load_vitamin_d()
    forced = tuple(s for s in (x.strip() for x in args.force_include.split(",")) if s)
    result = meta_analyze(studies, args.alpha, _source_from_args(args), force_include=forced)
    export = forest_csv(result.forest_rows())
    if args.forest_out:
        Path(args.forest_out).write_text(export)

    included = [s.id for s in result.included]
    excluded = [d.study_id for d in result.decisions if not d.included]
    lines = [f"studies: {len(result.decisions)} total, {len(included)} included, "
             f"{len(excluded)} excluded"]
    for d in result.decisions:
        mark = "included" if d.included else f"excluded ({d.exclusion_reason})"
        lines.append(f"  {d.study_id}: {mark}")
    for r in (result.fixed, result.random):
        lines.append(f"{r.model} effect: MD = {r.pooled_md:.4g} "
                     f"[{r.ci_low:.4g}, {r.ci_high:.4g}]  tau2 = {r.tau2:.4g}  "
                     f"I2 = {100 * r.i2:.1f}%")
    if args.forest_out:
        lines.append(f"forest export written to {args.forest_out}")
    text = "\n".join(lines)

    payload = {
        "decisions": [
            {"study_id": d.study_id, "included": d.included,
             "exclusion_reason": d.exclusion_reason}
            for d in result.decisions
        ],
        "fixed": _meta_payload(result.fixed),
        "random": _meta_payload(result.random),
        "forest": [dataclasses.asdict(r) for r in result.forest_rows()],
    }
    rows = [("id", "md", "ci_low", "ci_high", "weight_pct", "model")]
    rows += [(r.id, repr(r.md), repr(r.ci_low), repr(r.ci_high),
              repr(r.weight_pct), r.model) for r in result.forest_rows()]
    return _emit(args, payload, text, tuple(rows))


def _meta_payload(result) -> dict:
    return {
        "model": result.model,
        "pooled_md": result.pooled_md,
        "ci_low": result.ci_low,
        "ci_high": result.ci_high,
        "se": result.se,
        "q_stat": result.q_stat,
        "tau2": result.tau2,
        "i2": result.i2,
        "per_study": [dataclasses.asdict(e) for e in result.per_study],
    }


def parse_distribution(text: str) -> DistributionSpec:
    name, _, params = text.partition(":")
    key = name.strip().lower()
    if key not in _DIST_PRESETS:
        raise InvalidArgumentError(
            f"unknown distribution {name!r} (expected one of {sorted(_DIST_PRESETS)})")
    args = [float(x) for x in params.split(",")] if params else None
    return _DIST_PRESETS[key](args)


def cmd_simulate(args) -> int:
    source = _source_from_args(args)
    scenarios = tuple(Scenario.parse(s) for s in args.scenario.split(",") if s.strip())
    n_grid = tuple(int(x) for x in args.n_grid.split(",") if x.strip())
    dist = parse_distribution(args.dist) if args.dist else None
    experiment = args.experiment.replace("-", "_")
    spec = simulate.ExperimentSpec(
        experiment=experiment, reps=args.reps, seed=args.seed, alpha=args.alpha,
        source=source, scenarios=scenarios, n_grid=n_grid, distribution=dist,
        workers=args.workers, allow_off_grid=args.allow_off_grid)

    if experiment in ("type1", "power"):
        runner = simulate.run_type1 if experiment == "type1" else simulate.run_power
        points = runner(spec)
        body = simulate.rates_csv(points)
        payload = [dataclasses.asdict(p) | {"scenario": p.scenario.value}
                   for p in points]
    elif experiment == "estimator_bias":
        result = simulate.run_estimator_bias(spec, n=args.n or 200)
        body = simulate.estimator_bias_csv([result])
        payload = dataclasses.asdict(result)
    else:
        result = simulate.run_fixed_threshold(spec, n=args.n or 100)
        payload = dataclasses.asdict(result)
        rows = [("metric", "value"),
                ("threshold", result.threshold),
                ("type1_rate", repr(result.type1_rate)),
                ("type1_se", repr(result.type1_se)),
                ("power", repr(result.power)),
                ("power_se", repr(result.power_se)),
                ("alt_mean", repr(result.alt_mean))]
        buf = io.StringIO()
        csv.writer(buf).writerows(rows)
        body = buf.getvalue()

    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{args.experiment}.csv"
        path.write_text(body)
        (out_dir / f"{args.experiment}.json").write_text(json.dumps(payload, indent=2))
        print(f"wrote {path}")
        return 0
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(body, end="")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
