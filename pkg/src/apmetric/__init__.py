"""Clustering quality from contingency tables.

Computes the associativity-peakiness (AP) score and a set of reference
partition-comparison metrics (Rand family, Fowlkes-Mallows, entropy family,
adjusted mutual information) directly from a contingency table, plus a
synthetic table generator and a scenario harness for score distributions,
correlations, and timing. A compiled kernel backend is used when available;
see apmetric.backends.
"""

from . import backends, errors
from .ap import (
    ApBreakdown,
    F1Breakdown,
    ap_components,
    ap_score,
    associativity,
    cluster_purity,
    f1_components,
    f1_score,
    peakiness,
    row_accuracy,
    row_peakiness,
    truth_class_accuracy,
)
from .contingency import (
    ContingencyTable,
    LabelPair,
    from_labels,
    parse_csv,
    serialize_csv,
    to_labels,
    validate,
)
from .harness import (
    DEFAULT_MASTER_SEED,
    DEFAULT_TOTAL,
    METRIC_NAMES,
    Histogram,
    ScenarioConfig,
    ScenarioKind,
    ScenarioReport,
    ScoreSet,
    TimingStats,
    benchmark,
    extreme_table,
    histogram,
    pearson,
    run_scenario,
    write_report,
)
from .refmetrics import (
    EntropyStats,
    PairCounts,
    adjusted_mutual_information,
    adjusted_rand_score,
    entropy_stats,
    fowlkes_mallows,
    homogeneity_completeness_v,
    pair_counts,
    rand_score,
)
from .tablegen import (
    GenSpec,
    TableMode,
    generate_table,
    generate_tables,
    random_sum_vector,
    table_rng,
)

__version__ = "0.1.0"

__all__ = [
    "ApBreakdown",
    "ContingencyTable",
    "EntropyStats",
    "F1Breakdown",
    "GenSpec",
    "Histogram",
    "LabelPair",
    "PairCounts",
    "ScenarioConfig",
    "ScenarioKind",
    "ScenarioReport",
    "ScoreSet",
    "TableMode",
    "TimingStats",
    "DEFAULT_MASTER_SEED",
    "DEFAULT_TOTAL",
    "METRIC_NAMES",
    "adjusted_mutual_information",
    "adjusted_rand_score",
    "ap_components",
    "ap_score",
    "associativity",
    "backends",
    "benchmark",
    "cluster_purity",
    "entropy_stats",
    "errors",
    "extreme_table",
    "f1_components",
    "f1_score",
    "fowlkes_mallows",
    "from_labels",
    "generate_table",
    "generate_tables",
    "histogram",
    "homogeneity_completeness_v",
    "pair_counts",
    "parse_csv",
    "peakiness",
    "pearson",
    "rand_score",
    "random_sum_vector",
    "row_accuracy",
    "row_peakiness",
    "run_scenario",
    "serialize_csv",
    "table_rng",
    "to_labels",
    "truth_class_accuracy",
    "validate",
    "write_report",
    "__version__",
]
