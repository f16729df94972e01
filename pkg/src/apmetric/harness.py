"""Scenario runs: score distributions, correlations, and timing.

A scenario fixes a table source (an extreme table or a random family), scores
every table with the eight metrics, and aggregates histograms, Pearson
correlations of each metric against AP, per-metric wall-clock timing, and
missing-value counts. Six preset scenarios are built in:

    1  ideal 4x4, one table      4  high 4x4, 500 tables
    2  worst 4x4, one table      5  high 4x6, 500 tables
    3  low 4x4, 500 tables       6  high 4x2, 500 tables

all at total 2521. Scoring is deterministic given the master seed; timing is
not. A metric that rejects a table (degenerate shape, zero mass) contributes a
missing value: it is left out of histograms and correlations and counted in the
report, so histogram mass plus missing always equals the table count.
"""

from __future__ import annotations

import csv
import json
import math
import statistics
from contextlib import nullcontext
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from time import perf_counter_ns
from typing import Callable, Iterable, Sequence

from . import backends
from .ap import ap_components, f1_components
from .contingency import ContingencyTable
from .errors import (
    ApmetricError,
    InvalidBinsError,
    InvalidSpecError,
    LengthMismatchError,
    ShapeUnsatisfiableError,
    ZeroVarianceError,
)
from .refmetrics import (
    adjusted_mutual_information,
    adjusted_rand_score,
    fowlkes_mallows,
    homogeneity_completeness_v,
)
from .tablegen import GenSpec, TableMode, generate_tables

__all__ = [
    "METRIC_NAMES",
    "DEFAULT_MASTER_SEED",
    "DEFAULT_TOTAL",
    "ScenarioKind",
    "ScenarioConfig",
    "ScoreSet",
    "Histogram",
    "TimingStats",
    "ScenarioReport",
    "extreme_table",
    "pearson",
    "histogram",
    "benchmark",
    "run_scenario",
    "write_report",
]

METRIC_NAMES = ("ap", "ami", "ars", "fms", "completeness", "homogeneity", "v", "f1")

DEFAULT_MASTER_SEED = 7
DEFAULT_TOTAL = 2521

METRICS: dict[str, Callable[[ContingencyTable], float]] = {
    "ap": lambda t: ap_components(t)[2],
    "ami": adjusted_mutual_information,
    "ars": adjusted_rand_score,
    "fms": fowlkes_mallows,
    "completeness": lambda t: homogeneity_completeness_v(t)[1],
    "homogeneity": lambda t: homogeneity_completeness_v(t)[0],
    "v": lambda t: homogeneity_completeness_v(t)[2],
    "f1": lambda t: f1_components(t)[2],
}

SCORE_RANGES: dict[str, tuple[float, float]] = {name: (0.0, 1.0) for name in METRIC_NAMES}
SCORE_RANGES["ars"] = (-0.5, 1.0)


class ScenarioKind(str, Enum):
    IDEAL = "ideal"
    WORST = "worst"
    LOW = "low"
    HIGH = "high"


_PRESETS = {
    1: (ScenarioKind.IDEAL, 4, 4, 1),
    2: (ScenarioKind.WORST, 4, 4, 1),
    3: (ScenarioKind.LOW, 4, 4, 500),
    4: (ScenarioKind.HIGH, 4, 4, 500),
    5: (ScenarioKind.HIGH, 4, 6, 500),
    6: (ScenarioKind.HIGH, 4, 2, 500),
}


def _as_kind(kind: "ScenarioKind | str") -> ScenarioKind:
    try:
        return ScenarioKind(kind)
    except ValueError:
        choices = ", ".join(k.value for k in ScenarioKind)
        raise InvalidSpecError(f"kind must be one of {choices}, got {kind!r}") from None


@dataclass(frozen=True)
class ScenarioConfig:
    """One scenario: a table source plus run size and seed."""

    kind: ScenarioKind
    rows: int
    cols: int
    n_tables: int
    total: int = DEFAULT_TOTAL
    master_seed: int = DEFAULT_MASTER_SEED
    zero_weight: float = 1000.0
    scenario: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", _as_kind(self.kind))
        if self.rows < 1 or self.cols < 1:
            raise InvalidSpecError(f"shape {self.rows}x{self.cols} must be at least 1x1")
        if self.n_tables < 1:
            raise InvalidSpecError(f"n_tables {self.n_tables} must be at least 1")
        if self.total < 1:
            raise InvalidSpecError(f"total {self.total} must be at least 1")

    @classmethod
    def preset(cls, scenario_id: int, master_seed: int = DEFAULT_MASTER_SEED) -> "ScenarioConfig":
        """One of the six built-in scenarios."""
        if scenario_id not in _PRESETS:
            raise InvalidSpecError(f"scenario id must be 1..6, got {scenario_id}")
        kind, rows, cols, n_tables = _PRESETS[scenario_id]
        return cls(
            kind=kind,
            rows=rows,
            cols=cols,
            n_tables=n_tables,
            total=DEFAULT_TOTAL,
            master_seed=master_seed,
            scenario=scenario_id,
        )


@dataclass(frozen=True)
class ScoreSet:
    """All scores for one table; None marks a metric that rejected it."""

    index: int
    ap: float | None
    ami: float | None
    ars: float | None
    fms: float | None
    completeness: float | None
    homogeneity: float | None
    v: float | None
    f1: float | None
    associativity: float | None = None
    peakiness: float | None = None
    truth_class_accuracy: float | None = None
    cluster_purity: float | None = None

    def metric_value(self, name: str) -> float | None:
        if name not in METRIC_NAMES:
            raise InvalidSpecError(f"unknown metric {name!r}")
        return getattr(self, name)


@dataclass(frozen=True)
class Histogram:
    """Equal-width bins; each bin is [left, right) except the last, which is closed."""

    edges: tuple[float, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True)
class TimingStats:
    """Wall-clock stats over per-invocation samples, in microseconds."""

    mean_us: float
    median_us: float
    p95_us: float
    min_us: float
    max_us: float
    count: int

    @classmethod
    def from_ns(cls, samples_ns: Sequence[int]) -> "TimingStats":
        if not samples_ns:
            raise InvalidSpecError("timing stats need at least one sample")
        us = sorted(ns / 1000.0 for ns in samples_ns)
        rank = max(0, math.ceil(0.95 * len(us)) - 1)
        return cls(
            mean_us=math.fsum(us) / len(us),
            median_us=statistics.median(us),
            p95_us=us[rank],
            min_us=us[0],
            max_us=us[-1],
            count=len(us),
        )


@dataclass(frozen=True)
class ScenarioReport:
    """Everything a scenario run produces, minus the tables themselves."""

    config: ScenarioConfig
    scores: tuple[ScoreSet, ...]
    histograms: dict[str, Histogram]
    correlations: dict[str, float | None]
    timings: dict[str, TimingStats | None]
    missing: dict[str, int]

    def metric_column(self, name: str) -> list[float | None]:
        return [score.metric_value(name) for score in self.scores]


def extreme_table(
    kind: ScenarioKind | str,
    shape: tuple[int, int] = (4, 4),
    total: int = DEFAULT_TOTAL,
) -> ContingencyTable:
    """Best- or worst-case table at a shape and total.

    IDEAL puts each row's mass in its own column (needs cols >= rows); WORST
    piles every row into column 0. The total splits as evenly as possible, the
    first (total mod rows) rows taking one extra.
    """
    kind = _as_kind(kind)
    rows, cols = shape
    if rows < 1 or cols < 1:
        raise InvalidSpecError(f"shape {rows}x{cols} must be at least 1x1")
    if total < 1:
        raise InvalidSpecError(f"total {total} must be at least 1")
    if kind is ScenarioKind.IDEAL and cols < rows:
        raise ShapeUnsatisfiableError(
            f"ideal table needs cols >= rows, got {rows}x{cols}"
        )
    if kind not in (ScenarioKind.IDEAL, ScenarioKind.WORST):
        raise InvalidSpecError(f"extreme tables are 'ideal' or 'worst', got {kind.value!r}")
    base, extra = divmod(total, rows)
    grid = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        mass = base + (1 if i < extra else 0)
        grid[i][i if kind is ScenarioKind.IDEAL else 0] = mass
    return ContingencyTable(grid)


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation; rejects mismatched or short inputs and zero variance."""
    if len(x) != len(y):
        raise LengthMismatchError(f"lengths differ: {len(x)} vs {len(y)}")
    k = len(x)
    if k < 2:
        raise LengthMismatchError("correlation needs at least two points")
    mean_x = math.fsum(x) / k
    mean_y = math.fsum(y) / k
    sxy = math.fsum((xv - mean_x) * (yv - mean_y) for xv, yv in zip(x, y))
    sxx = math.fsum((xv - mean_x) ** 2 for xv in x)
    syy = math.fsum((yv - mean_y) ** 2 for yv in y)
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVarianceError("correlation undefined for a constant input")
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def histogram(
    values: Iterable[float],
    bins: int = 20,
    value_range: tuple[float, float] = (0.0, 1.0),
) -> Histogram:
    """Fixed-range equal-width histogram.

    Bins are half-open [left, right) with the last bin closed at the top;
    values outside the range are counted into the nearest end bin.
    """
    if bins < 1:
        raise InvalidBinsError(f"bins {bins} must be at least 1")
    lo, hi = value_range
    if not lo < hi:
        raise InvalidBinsError(f"range ({lo}, {hi}) must be increasing")
    width = hi - lo
    counts = [0] * bins
    for v in values:
        if v <= lo:
            idx = 0
        elif v >= hi:
            idx = bins - 1
        else:
            idx = int((v - lo) / width * bins)
            if idx >= bins:
                idx = bins - 1
        counts[idx] += 1
    edges = tuple(lo + width * i / bins for i in range(bins + 1))
    return Histogram(edges=edges, counts=tuple(counts))


def scenario_tables(config: ScenarioConfig) -> list[ContingencyTable]:
    """Materialize the tables a scenario scores."""
    if config.kind in (ScenarioKind.IDEAL, ScenarioKind.WORST):
        table = extreme_table(config.kind, (config.rows, config.cols), config.total)
        return [table] * config.n_tables
    spec = GenSpec(
        rows=config.rows,
        cols=config.cols,
        total=config.total,
        mode=TableMode(config.kind.value),
        zero_weight=config.zero_weight,
        seed=config.master_seed,
    )
    return list(generate_tables(spec, config.n_tables))


def _stage(table: ContingencyTable) -> None:
    # Materialize the table's cached views (margins, totals, backend data form)
    # so timed regions measure metric work, not lazy table preparation.
    table.row_sums
    table.col_sums
    table.total
    backends.kernels_and_data(table)


def _score_one(
    table: ContingencyTable, index: int, times_ns: dict[str, list[int]]
) -> ScoreSet:
    values: dict[str, float | None] = {}
    extras: dict[str, float | None] = {
        "associativity": None,
        "peakiness": None,
        "truth_class_accuracy": None,
        "cluster_purity": None,
    }
    for name in METRIC_NAMES:
        start = perf_counter_ns()
        try:
            if name == "ap":
                a, p, value = ap_components(table)
                extras["associativity"] = a
                extras["peakiness"] = p
            elif name == "f1":
                tca, purity, value = f1_components(table)
                extras["truth_class_accuracy"] = tca
                extras["cluster_purity"] = purity
            else:
                value = METRICS[name](table)
        except ApmetricError:
            values[name] = None
            continue
        times_ns[name].append(perf_counter_ns() - start)
        values[name] = value
    return ScoreSet(index=index, **values, **extras)


def run_scenario(config: ScenarioConfig, bins: int = 20) -> ScenarioReport:
    """Score every table and aggregate distributions, correlations, and timing."""
    tables = scenario_tables(config)
    for table in tables:
        _stage(table)
    times_ns: dict[str, list[int]] = {name: [] for name in METRIC_NAMES}
    scores = tuple(
        _score_one(table, index, times_ns) for index, table in enumerate(tables)
    )

    histograms: dict[str, Histogram] = {}
    missing: dict[str, int] = {}
    for name in METRIC_NAMES:
        column = [s.metric_value(name) for s in scores]
        present = [v for v in column if v is not None]
        missing[name] = len(column) - len(present)
        histograms[name] = histogram(present, bins=bins, value_range=SCORE_RANGES[name])

    correlations: dict[str, float | None] = {}
    ap_column = [s.ap for s in scores]
    for name in METRIC_NAMES:
        if name == "ap":
            continue
        paired = [
            (mv, av)
            for mv, av in zip((s.metric_value(name) for s in scores), ap_column)
            if mv is not None and av is not None
        ]
        if len(paired) < 2:
            correlations[name] = None
            continue
        try:
            correlations[name] = pearson([m for m, _ in paired], [a for _, a in paired])
        except ZeroVarianceError:
            correlations[name] = None

    timings = {
        name: TimingStats.from_ns(samples) if samples else None
        for name, samples in times_ns.items()
    }
    return ScenarioReport(
        config=config,
        scores=scores,
        histograms=histograms,
        correlations=correlations,
        timings=timings,
        missing=missing,
    )


def benchmark(
    metric: "str | Callable[[ContingencyTable], float]",
    tables: Sequence[ContingencyTable],
    repetitions: int = 1,
    *,
    warmup: int = 10,
    backend: str | None = None,
) -> TimingStats:
    """Time one metric over pre-built tables.

    Each of repetitions * len(tables) invocations is timed individually after
    warmup untimed invocations (cycling through the tables). I/O and parsing
    are outside the timed region by construction. Runs strictly sequentially.
    """
    if repetitions < 1:
        raise InvalidSpecError(f"repetitions {repetitions} must be at least 1")
    if warmup < 0:
        raise InvalidSpecError(f"warmup {warmup} must be non-negative")
    if not tables:
        raise InvalidSpecError("benchmark needs at least one table")
    if isinstance(metric, str):
        if metric not in METRICS:
            raise InvalidSpecError(f"unknown metric {metric!r}")
        fn = METRICS[metric]
    else:
        fn = metric
    context = backends.use(backend) if backend is not None else nullcontext()
    samples_ns: list[int] = []
    with context:
        for table in tables:
            _stage(table)
        for i in range(warmup):
            fn(tables[i % len(tables)])
        for _ in range(repetitions):
            for table in tables:
                start = perf_counter_ns()
                fn(table)
                samples_ns.append(perf_counter_ns() - start)
    return TimingStats.from_ns(samples_ns)


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def write_report(report: ScenarioReport, out_dir: "str | Path") -> dict[str, Path]:
    """Write the CSV artifact set plus summary.json; returns the paths by name.

    Files: scores.csv (per-table metric values, missing as empty cells),
    hist_<metric>.csv, correlations.csv, timings.csv, scatter_f1_ap.csv, and
    summary.json. CSV and JSON carry full-precision values.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}

    def _writer(name: str):
        path = out / name
        paths[name] = path
        return path

    with _writer("scores.csv").open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", *METRIC_NAMES])
        for score in report.scores:
            w.writerow([score.index, *(_fmt(score.metric_value(m)) for m in METRIC_NAMES)])

    for name, hist in report.histograms.items():
        with _writer(f"hist_{name}.csv").open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["bin_left", "bin_right", "count"])
            for left, right, count in zip(hist.edges, hist.edges[1:], hist.counts):
                w.writerow([repr(left), repr(right), count])

    with _writer("correlations.csv").open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["metric", "pearson_r"])
        for name, r in report.correlations.items():
            w.writerow([name, _fmt(r)])

    with _writer("timings.csv").open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["metric", "mean_us", "median_us", "p95_us", "min_us", "max_us"])
        for name, stats in report.timings.items():
            if stats is None:
                w.writerow([name, "", "", "", "", ""])
            else:
                w.writerow(
                    [
                        name,
                        repr(stats.mean_us),
                        repr(stats.median_us),
                        repr(stats.p95_us),
                        repr(stats.min_us),
                        repr(stats.max_us),
                    ]
                )

    with _writer("scatter_f1_ap.csv").open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["f1", "ap"])
        for score in report.scores:
            if score.f1 is not None and score.ap is not None:
                w.writerow([repr(score.f1), repr(score.ap)])

    summary = {
        "scenario": report.config.scenario,
        "kind": report.config.kind.value,
        "shape": [report.config.rows, report.config.cols],
        "n_tables": report.config.n_tables,
        "total": report.config.total,
        "master_seed": report.config.master_seed,
        "backend": backends.active_name(),
        "metrics": {
            name: {
                "mean": _mean_or_none(report.metric_column(name)),
                "min": _min_or_none(report.metric_column(name)),
                "max": _max_or_none(report.metric_column(name)),
                "missing": report.missing[name],
                "correlation_vs_ap": report.correlations.get(name),
                "timing_us": None
                if report.timings[name] is None
                else asdict(report.timings[name]),
            }
            for name in METRIC_NAMES
        },
    }
    path = _writer("summary.json")
    path.write_text(json.dumps(summary, indent=2) + "\n")
    return paths


def _present(column: list[float | None]) -> list[float]:
    return [v for v in column if v is not None]


def _mean_or_none(column: list[float | None]) -> float | None:
    present = _present(column)
    return math.fsum(present) / len(present) if present else None


def _min_or_none(column: list[float | None]) -> float | None:
    present = _present(column)
    return min(present) if present else None


def _max_or_none(column: list[float | None]) -> float | None:
    present = _present(column)
    return max(present) if present else None
