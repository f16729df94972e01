"""Pair-based and entropy-based partition comparison metrics.

Everything is computed directly from the contingency table. The pair family
counts agreements over the C(n, 2) unordered sample pairs via binomial sums of
the cells and margins; the entropy family uses natural-log entropies of the
margin and joint distributions. Adjusted mutual information subtracts the exact
expectation of MI under random tables with the same margins (hypergeometric
model) before normalizing by the arithmetic mean of the two entropies.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Iterable

from . import backends
from .contingency import ContingencyTable, as_table
from .errors import NonPositiveBetaError, TooFewSamplesError, ZeroTotalError

__all__ = [
    "PairCounts",
    "EntropyStats",
    "pair_counts",
    "rand_score",
    "adjusted_rand_score",
    "fowlkes_mallows",
    "entropy_stats",
    "adjusted_mutual_information",
    "homogeneity_completeness_v",
]

_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class PairCounts:
    """Agreement counts over all unordered sample pairs.

    same_same pairs share both class and cluster; same_diff share only the
    class; diff_same share only the cluster; diff_diff share neither.
    """

    n: int
    n_pairs: int
    same_same: int
    same_diff: int
    diff_same: int
    diff_diff: int

    @property
    def a(self) -> int:
        """Pairs grouped together in both partitions (true positives)."""
        return self.same_same

    @property
    def b(self) -> int:
        """Pairs separated in both partitions."""
        return self.diff_diff


@dataclass(frozen=True)
class EntropyStats:
    """Natural-log entropies of a table's partitions, with MI and its expectation."""

    h_truth: float
    h_pred: float
    h_truth_given_pred: float
    h_pred_given_truth: float
    mutual_information: float
    expected_mutual_information: float


def _pair_sums(table: ContingencyTable | Iterable[Iterable[int]]):
    t = as_table(table)
    if t.total < 2:
        raise TooFewSamplesError("pair metrics need a total of at least two")
    kernels, data = backends.kernels_and_data(t)
    n, s_cells, s_rows, s_cols = kernels.pair_sums(data)
    return int(n), int(s_cells), int(s_rows), int(s_cols)


def pair_counts(table: ContingencyTable | Iterable[Iterable[int]]) -> PairCounts:
    """Tally the four pair-agreement categories from binomial sums."""
    n, s_cells, s_rows, s_cols = _pair_sums(table)
    n_pairs = n * (n - 1) // 2
    same_same = s_cells
    same_diff = s_rows - s_cells
    diff_same = s_cols - s_cells
    diff_diff = n_pairs - same_same - same_diff - diff_same
    return PairCounts(
        n=n,
        n_pairs=n_pairs,
        same_same=same_same,
        same_diff=same_diff,
        diff_same=diff_same,
        diff_diff=diff_diff,
    )


def rand_score(table: ContingencyTable | Iterable[Iterable[int]]) -> float:
    """Fraction of pairs on which the two partitions agree."""
    n, s_cells, s_rows, s_cols = _pair_sums(table)
    n_pairs = n * (n - 1) // 2
    agreements = 2 * s_cells + n_pairs - s_rows - s_cols
    return agreements / n_pairs


def adjusted_rand_score(table: ContingencyTable | Iterable[Iterable[int]]) -> float:
    """Rand index adjusted for chance; 1.0 in the degenerate identical case."""
    n, s_cells, s_rows, s_cols = _pair_sums(table)
    n_pairs = n * (n - 1) // 2
    expected = s_rows * s_cols / n_pairs
    denominator = 0.5 * (s_rows + s_cols) - expected
    if denominator == 0.0:
        return 1.0
    return (s_cells - expected) / denominator


def fowlkes_mallows(table: ContingencyTable | Iterable[Iterable[int]]) -> float:
    """Geometric mean of pair precision and pair recall; 0 when either is undefined."""
    n, s_cells, s_rows, s_cols = _pair_sums(table)
    if s_rows == 0 or s_cols == 0:
        return 0.0
    return math.sqrt((s_cells / s_rows) * (s_cells / s_cols))


def entropy_stats(table: ContingencyTable | Iterable[Iterable[int]]) -> EntropyStats:
    """All entropy-family statistics for a table, including exact expected MI."""
    t = as_table(table)
    if t.total == 0:
        raise ZeroTotalError("entropy statistics need a positive total")
    kernels, data = backends.kernels_and_data(t)
    h_truth, h_pred, h_tp, h_pt, mi = kernels.entropy_stats(data)
    emi = kernels.expected_mutual_info(data)
    return EntropyStats(
        h_truth=h_truth,
        h_pred=h_pred,
        h_truth_given_pred=h_tp,
        h_pred_given_truth=h_pt,
        mutual_information=mi,
        expected_mutual_information=emi,
    )


def adjusted_mutual_information(table: ContingencyTable | Iterable[Iterable[int]]) -> float:
    """MI adjusted for chance, normalized by the mean of the two entropies.

    1.0 when both partitions collapse to a single group (the degenerate
    identical case). The denominator is clamped away from zero at machine
    epsilon so near-degenerate tables stay finite.
    """
    t = as_table(table)
    if t.total < 2:
        raise TooFewSamplesError("adjusted mutual information needs a total of at least two")
    nonzero_rows = sum(1 for s in t.row_sums if s > 0)
    nonzero_cols = sum(1 for s in t.col_sums if s > 0)
    if nonzero_rows == 1 and nonzero_cols == 1:
        return 1.0
    kernels, data = backends.kernels_and_data(t)
    h_truth, h_pred, _, _, mi = kernels.entropy_stats(data)
    emi = kernels.expected_mutual_info(data)
    normalizer = 0.5 * (h_truth + h_pred)
    denominator = normalizer - emi
    if denominator < 0.0:
        denominator = min(denominator, -_EPS)
    else:
        denominator = max(denominator, _EPS)
    return (mi - emi) / denominator


def homogeneity_completeness_v(
    table: ContingencyTable | Iterable[Iterable[int]],
    beta: float = 1.0,
) -> tuple[float, float, float]:
    """(homogeneity, completeness, v-measure).

    Homogeneity is 1 - H(truth|pred)/H(truth) and defaults to 1.0 when H(truth)
    is zero; completeness mirrors it. V is the beta-weighted harmonic mean,
    0.0 when its numerator is zero.
    """
    t = as_table(table)
    if t.total == 0:
        raise ZeroTotalError("homogeneity/completeness need a positive total")
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
        raise NonPositiveBetaError(f"beta must be a positive finite number, got {beta!r}")
    beta = float(beta)
    kernels, data = backends.kernels_and_data(t)
    h_truth, h_pred, h_tp, h_pt, _ = kernels.entropy_stats(data)
    homogeneity = 1.0 if h_truth == 0.0 else max(0.0, 1.0 - h_tp / h_truth)
    completeness = 1.0 if h_pred == 0.0 else max(0.0, 1.0 - h_pt / h_pred)
    numerator = (1.0 + beta) * homogeneity * completeness
    if numerator == 0.0:
        v = 0.0
    else:
        v = numerator / (beta * homogeneity + completeness)
    return homogeneity, completeness, v
