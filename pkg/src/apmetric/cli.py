"""Command-line interface.

Four subcommands: score (metrics for one CSV table), gen (write random tables),
scenario (run a preset or custom scenario and write its artifact set), and
bench (time metrics over generated tables). Human-readable output rounds to
three decimals, half away from zero; CSV and JSON output keeps full precision.
Diagnostics go to stderr; data goes to stdout or files. Exit codes: 0 success,
1 runtime failure (bad file, bad table, metric error), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from . import backends
from .ap import ap_score, f1_score
from .contingency import parse_csv, serialize_csv
from .errors import ApmetricError
from .harness import (
    DEFAULT_MASTER_SEED,
    DEFAULT_TOTAL,
    METRIC_NAMES,
    ScenarioConfig,
    benchmark,
    run_scenario,
    scenario_tables,
    write_report,
)
from .refmetrics import (
    adjusted_mutual_information,
    adjusted_rand_score,
    fowlkes_mallows,
    homogeneity_completeness_v,
)
from .tablegen import DEFAULT_ZERO_WEIGHT, GenSpec, generate_tables

SCORE_KEYS = (
    "ap",
    "associativity",
    "peakiness",
    "f1",
    "tca",
    "purity",
    "ami",
    "ars",
    "fms",
    "completeness",
    "homogeneity",
    "v",
)

DISPLAY_NAMES = {
    "ap": "AP",
    "associativity": "Associativity",
    "peakiness": "Peakiness",
    "f1": "F1",
    "tca": "TruthClassAccuracy",
    "purity": "ClusterPurity",
    "ami": "AMI",
    "ars": "ARS",
    "fms": "FMS",
    "completeness": "Completeness",
    "homogeneity": "Homogeneity",
    "v": "V",
}


def round3(value: float) -> str:
    """Three decimals, ties away from zero."""
    return str(Decimal(repr(value)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def _default_seed() -> int:
    env = os.environ.get("APMETRIC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"apmetric: ignoring non-integer APMETRIC_SEED {env!r}", file=sys.stderr)
    return DEFAULT_MASTER_SEED


def _parse_shape(text: str) -> tuple[int, int]:
    try:
        rows_s, cols_s = text.lower().split("x")
        rows, cols = int(rows_s), int(cols_s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shape must look like 4x4, got {text!r}") from None
    if rows < 1 or cols < 1:
        raise argparse.ArgumentTypeError(f"shape must be at least 1x1, got {text!r}")
    return rows, cols


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _metric_list(text: str) -> list[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError("empty metric list")
    return names


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apmetric",
        description="Score clustering contingency tables and run scoring scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="compute metrics for one CSV table")
    p_score.add_argument("table", help="path to a CSV contingency table")
    p_score.add_argument(
        "--metrics",
        type=_metric_list,
        default=None,
        help=f"comma-separated subset of: {','.join(SCORE_KEYS)}",
    )
    p_score.add_argument(
        "--format",
        choices=("text", "csv", "json"),
        default="text",
        help="text rounds to 3 decimals; csv and json keep full precision",
    )
    p_score.add_argument(
        "--zero-rows",
        choices=("exclude", "zero"),
        default="exclude",
        help="peakiness policy for all-zero rows",
    )

    p_gen = sub.add_parser("gen", help="generate random tables as CSV files")
    p_gen.add_argument("--shape", type=_parse_shape, required=True, help="e.g. 4x4")
    p_gen.add_argument("--mode", choices=("low", "high"), required=True)
    p_gen.add_argument("--n", type=_positive_int, default=1, help="number of tables")
    p_gen.add_argument("--total", type=_positive_int, default=DEFAULT_TOTAL)
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--zero-weight", type=float, default=DEFAULT_ZERO_WEIGHT)
    p_gen.add_argument("--out", default=".", help="output directory (table_<k>.csv)")
    p_gen.add_argument(
        "--single-file",
        default=None,
        metavar="PATH",
        help="write one file with blank-line separators instead",
    )

    p_scn = sub.add_parser("scenario", help="run a preset or custom scenario")
    p_scn.add_argument(
        "id",
        nargs="?",
        type=int,
        choices=sorted(_PRESET_IDS),
        default=None,
        help="preset scenario 1-6; omit for a custom run",
    )
    p_scn.add_argument("--shape", type=_parse_shape, default=None, help="custom shape")
    p_scn.add_argument("--mode", choices=("ideal", "worst", "low", "high"), default=None)
    p_scn.add_argument("--n", type=_positive_int, default=500, help="custom table count")
    p_scn.add_argument("--total", type=_positive_int, default=DEFAULT_TOTAL)
    p_scn.add_argument("--seed", type=int, default=None)
    p_scn.add_argument("--out", default=None, help="artifact directory")

    p_bench = sub.add_parser("bench", help="time metrics over generated tables")
    p_bench.add_argument("--shape", type=_parse_shape, default=(4, 4))
    p_bench.add_argument("--mode", choices=("low", "high"), default="low")
    p_bench.add_argument("--n", type=_positive_int, default=500)
    p_bench.add_argument("--total", type=_positive_int, default=DEFAULT_TOTAL)
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument(
        "--metrics",
        type=_metric_list,
        default=None,
        help=f"comma-separated subset of: {','.join(METRIC_NAMES)}",
    )
    p_bench.add_argument("--reps", type=_positive_int, default=1)
    p_bench.add_argument("--warmup", type=_non_negative_int, default=10)
    p_bench.add_argument(
        "--backend",
        choices=("active", "pure", "compiled", "both"),
        default="active",
    )
    p_bench.add_argument("--out", default=None, help="where to write timings.csv")
    return parser


_PRESET_IDS = (1, 2, 3, 4, 5, 6)


def _compute_scores(table, keys: list[str], zero_rows: str) -> dict[str, float]:
    values: dict[str, float] = {}
    need_ap = {"ap", "associativity", "peakiness"} & set(keys)
    need_f1 = {"f1", "tca", "purity"} & set(keys)
    need_hcv = {"homogeneity", "completeness", "v"} & set(keys)
    if need_ap:
        breakdown = ap_score(table, zero_rows=zero_rows)  # type: ignore[arg-type]
        values["ap"] = breakdown.ap
        values["associativity"] = breakdown.associativity
        values["peakiness"] = breakdown.peakiness
    if need_f1:
        f1 = f1_score(table)
        values["f1"] = f1.f1
        values["tca"] = f1.truth_class_accuracy
        values["purity"] = f1.cluster_purity
    if need_hcv:
        h, c, v = homogeneity_completeness_v(table)
        values["homogeneity"] = h
        values["completeness"] = c
        values["v"] = v
    if "ami" in keys:
        values["ami"] = adjusted_mutual_information(table)
    if "ars" in keys:
        values["ars"] = adjusted_rand_score(table)
    if "fms" in keys:
        values["fms"] = fowlkes_mallows(table)
    return {key: values[key] for key in keys}


def _cmd_score(args: argparse.Namespace) -> int:
    keys = list(SCORE_KEYS) if args.metrics is None else args.metrics
    unknown = [k for k in keys if k not in SCORE_KEYS]
    if unknown:
        _usage_error(f"unknown metric names: {', '.join(unknown)}")
    table = parse_csv(Path(args.table).read_text())
    scores = _compute_scores(table, keys, args.zero_rows)
    if args.format == "json":
        print(json.dumps(scores))
    elif args.format == "csv":
        print(",".join(keys))
        print(",".join(repr(scores[k]) for k in keys))
    else:
        width = max(len(DISPLAY_NAMES[k]) for k in keys)
        for key in keys:
            print(f"{DISPLAY_NAMES[key]:<{width}}  {round3(scores[key])}")
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    rows, cols = args.shape
    spec = GenSpec(
        rows=rows,
        cols=cols,
        total=args.total,
        mode=args.mode,
        zero_weight=args.zero_weight,
        seed=seed,
    )
    tables = generate_tables(spec, args.n)
    if args.single_file is not None:
        path = Path(args.single_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(serialize_csv(t) for t in tables))
        print(f"wrote {args.n} tables to {path}", file=sys.stderr)
    else:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, table in enumerate(tables):
            (out / f"table_{k}.csv").write_text(serialize_csv(table))
        print(f"wrote {args.n} tables to {out}", file=sys.stderr)
    return 0


def _cmd_scenario(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.id is not None:
        config = ScenarioConfig.preset(args.id, master_seed=seed)
        label = f"scenario{args.id}"
    else:
        if args.shape is None or args.mode is None:
            _usage_error("custom scenarios need --shape and --mode")
        rows, cols = args.shape
        n_tables = 1 if args.mode in ("ideal", "worst") else args.n
        config = ScenarioConfig(
            kind=args.mode,
            rows=rows,
            cols=cols,
            n_tables=n_tables,
            total=args.total,
            master_seed=seed,
        )
        label = f"custom_{args.mode}_{rows}x{cols}"
    report = run_scenario(config)
    out = Path(args.out) if args.out is not None else Path(f"apmetric_{label}_seed{seed}")
    write_report(report, out)

    print(f"{label}: {config.kind.value} {config.rows}x{config.cols}, "
          f"{config.n_tables} tables, total {config.total}, seed {seed}")
    print(f"{'metric':<14}{'mean':>8}{'min':>8}{'max':>8}{'miss':>6}{'r_vs_ap':>9}")
    for name in METRIC_NAMES:
        column = [v for v in report.metric_column(name) if v is not None]
        if column:
            mean = sum(column) / len(column)
            lo, hi = min(column), max(column)
            stats = f"{round3(mean):>8}{round3(lo):>8}{round3(hi):>8}"
        else:
            stats = f"{'-':>8}{'-':>8}{'-':>8}"
        r = report.correlations.get(name)
        r_text = "-" if name == "ap" else ("n/a" if r is None else round3(r))
        print(f"{name:<14}{stats}{report.missing[name]:>6}{r_text:>9}")
    print(f"artifacts in {out}", file=sys.stderr)
    return 0


def _bench_one(args: argparse.Namespace, names: list[str], backend: str | None, tables) -> list[tuple]:
    rows = []
    for name in names:
        stats = benchmark(
            name, tables, repetitions=args.reps, warmup=args.warmup, backend=backend
        )
        rows.append((name, stats))
    rows.sort(key=lambda item: item[1].mean_us)
    return rows


def _cmd_bench(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    names = list(METRIC_NAMES) if args.metrics is None else args.metrics
    unknown = [n for n in names if n not in METRIC_NAMES]
    if unknown:
        _usage_error(f"unknown metric names: {', '.join(unknown)}")
    rows, cols = args.shape
    config = ScenarioConfig(
        kind=args.mode,
        rows=rows,
        cols=cols,
        n_tables=args.n,
        total=args.total,
        master_seed=seed,
    )
    tables = scenario_tables(config)

    if args.backend == "both":
        backend_names = list(backends.available())
    else:
        backend_names = [args.backend]
    results: dict[str, list[tuple]] = {}
    for backend in backend_names:
        results[backend] = _bench_one(args, names, backend, tables)

    for backend, rows_ in results.items():
        resolved = backends.get(backend).NAME
        print(f"backend: {resolved} ({args.n} tables, {args.reps} rep(s), "
              f"warmup {args.warmup})")
        print(f"{'metric':<14}{'mean_us':>10}{'median_us':>11}{'p95_us':>10}")
        for name, stats in rows_:
            print(
                f"{name:<14}{round3(stats.mean_us):>10}"
                f"{round3(stats.median_us):>11}{round3(stats.p95_us):>10}"
            )
    if len(results) == 2:
        print("speedup (pure mean / compiled mean):")
        pure = {n: s for n, s in results["pure"]}
        comp = {n: s for n, s in results["compiled"]}
        for name in names:
            ratio = pure[name].mean_us / comp[name].mean_us
            print(f"{name:<14}{ratio:>9.2f}x")

    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "timings.csv"
        with path.open("w", newline="") as fh:
            header = "metric,mean_us,median_us,p95_us,min_us,max_us"
            multi = len(results) > 1
            fh.write(header + (",backend\n" if multi else "\n"))
            for backend, rows_ in results.items():
                for name, s in rows_:
                    line = (
                        f"{name},{s.mean_us!r},{s.median_us!r},{s.p95_us!r},"
                        f"{s.min_us!r},{s.max_us!r}"
                    )
                    fh.write(line + (f",{backend}\n" if multi else "\n"))
        print(f"timings in {path}", file=sys.stderr)
    return 0


class _UsageError(Exception):
    pass


def _usage_error(message: str) -> None:
    raise _UsageError(message)


def main(argv: "list[str] | None" = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "score": _cmd_score,
        "gen": _cmd_gen,
        "scenario": _cmd_scenario,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except _UsageError as exc:
        parser.error(str(exc))  # exits 2
        return 2
    except (ApmetricError, OSError) as exc:
        print(f"apmetric: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
