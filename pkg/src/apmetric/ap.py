"""Associativity-peakiness scoring, with the table-derived F1 used alongside it.

Associativity (A) looks only at where each row peaks: it is the fraction of
unordered row pairs whose largest entries sit in different columns, so it is 1
exactly when every row peaks in its own column. Peakiness (P) measures how
decisively each row peaks: per row, (max1 - max2) / max1, averaged over rows.
AP is the harmonic mean of A and P.

The F1 score here is the harmonic mean of truth-class accuracy (mean over rows
of max/rowsum) and cluster purity (mean over columns of max/colsum), both
computed straight from the table.

All-zero rows have no defined peakiness; by default they are excluded from the
mean (pass zero_rows="zero" to count them as 0 instead). Truth-class accuracy
and purity always exclude all-zero rows and columns.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from math import isnan
from typing import Iterable, Literal, Sequence

from . import backends
from .contingency import ContingencyTable, as_table
from .errors import (
    AllRowsZeroError,
    NegativeEntryError,
    NonIntegerTokenError,
    RowTooShortError,
    TooFewColumnsError,
    TooFewRowsError,
    ZeroTotalError,
)

__all__ = [
    "ApBreakdown",
    "F1Breakdown",
    "associativity",
    "row_peakiness",
    "peakiness",
    "ap_components",
    "ap_score",
    "row_accuracy",
    "truth_class_accuracy",
    "cluster_purity",
    "f1_components",
    "f1_score",
]

ZeroRowPolicy = Literal["exclude", "zero"]


@dataclass(frozen=True)
class ApBreakdown:
    """AP score with its parts.

    per_row_peakiness holds (row index, value) for each row included in the
    peakiness mean; excluded_rows lists the all-zero rows left out of it.
    """

    associativity: float
    peakiness: float
    ap: float
    per_row_peakiness: tuple[tuple[int, float], ...]
    excluded_rows: tuple[int, ...]


@dataclass(frozen=True)
class F1Breakdown:
    """Table F1 with its parts and the all-zero rows/columns excluded from them."""

    truth_class_accuracy: float
    cluster_purity: float
    f1: float
    excluded_rows: tuple[int, ...]
    excluded_cols: tuple[int, ...]


def _harmonic(x: float, y: float) -> float:
    if x == 0.0 or y == 0.0:
        return 0.0
    return 2.0 * x * y / (x + y)


def _check_policy(zero_rows: str) -> None:
    if zero_rows not in ("exclude", "zero"):
        raise ValueError(f"zero_rows must be 'exclude' or 'zero', got {zero_rows!r}")


def associativity(table: ContingencyTable | Iterable[Iterable[int]]) -> float:
    """Fraction of unordered row pairs whose argmax columns differ.

    Tied row maxima resolve to the lowest column index. Needs at least two rows
    and a positive total.
    """
    t = as_table(table)
    if t.n_rows < 2:
        raise TooFewRowsError("associativity needs at least two rows")
    if t.total == 0:
        raise ZeroTotalError("associativity needs a positive total")
    kernels, data = backends.kernels_and_data(t)
    return kernels.associativity(data)


def row_peakiness(row: Sequence[int]) -> float | None:
    """(max1 - max2) / max1 for one row; None when the row is all zero.

    max2 counts multiplicity, so a duplicated maximum gives 0. Needs at least
    two entries.
    """
    values = list(row)
    if len(values) < 2:
        raise RowTooShortError("row peakiness needs at least two entries")
    m1 = -1
    m2 = -1
    for v in values:
        try:
            v = operator.index(v)
        except TypeError:
            raise NonIntegerTokenError(f"non-integer count {v!r}") from None
        if v < 0:
            raise NegativeEntryError(f"negative count {v}")
        if v > m1:
            m2 = m1
            m1 = v
        elif v > m2:
            m2 = v
    if m1 == 0:
        return None
    return (m1 - m2) / m1


def peakiness(
    table: ContingencyTable | Iterable[Iterable[int]],
    *,
    zero_rows: ZeroRowPolicy = "exclude",
) -> float:
    """Mean row peakiness. Needs at least two columns and a nonzero row."""
    _check_policy(zero_rows)
    t = as_table(table)
    if t.n_cols < 2:
        raise TooFewColumnsError("peakiness needs at least two columns")
    if t.total == 0:
        raise AllRowsZeroError("peakiness needs at least one nonzero row")
    kernels, data = backends.kernels_and_data(t)
    values = kernels.peakiness_rows(data)
    total = sum(v for v in values if not isnan(v))
    defined = sum(1 for v in values if not isnan(v))
    return total / (len(values) if zero_rows == "zero" else defined)


def ap_components(
    table: ContingencyTable | Iterable[Iterable[int]],
    *,
    zero_rows: ZeroRowPolicy = "exclude",
) -> tuple[float, float, float]:
    """(associativity, peakiness, ap) without the per-row breakdown."""
    t = as_table(table)
    if t.n_rows < 2:
        raise TooFewRowsError("ap needs at least two rows")
    if t.n_cols < 2:
        raise TooFewColumnsError("ap needs at least two columns")
    if t.total == 0:
        raise ZeroTotalError("ap needs a positive total")
    kernels, data = backends.kernels_and_data(t)
    a, peak_sum, defined = kernels.ap_parts(data)
    if zero_rows == "exclude":
        p = peak_sum / defined
    elif zero_rows == "zero":
        p = peak_sum / t.n_rows
    else:
        _check_policy(zero_rows)
        raise AssertionError("unreachable")
    return a, p, _harmonic(a, p)


def ap_score(
    table: ContingencyTable | Iterable[Iterable[int]],
    *,
    zero_rows: ZeroRowPolicy = "exclude",
) -> ApBreakdown:
    """AP score with the per-row peakiness breakdown."""
    _check_policy(zero_rows)
    t = as_table(table)
    if t.n_rows < 2:
        raise TooFewRowsError("ap needs at least two rows")
    if t.n_cols < 2:
        raise TooFewColumnsError("ap needs at least two columns")
    if t.total == 0:
        raise ZeroTotalError("ap needs a positive total")
    kernels, data = backends.kernels_and_data(t)
    a = kernels.associativity(data)
    values = kernels.peakiness_rows(data)
    peak_sum = sum(v for v in values if not isnan(v))
    if zero_rows == "zero":
        p = peak_sum / len(values)
        per_row = tuple((i, 0.0 if isnan(v) else v) for i, v in enumerate(values))
        excluded: tuple[int, ...] = ()
    else:
        defined = sum(1 for v in values if not isnan(v))
        p = peak_sum / defined
        per_row = tuple((i, v) for i, v in enumerate(values) if not isnan(v))
        excluded = tuple(i for i, v in enumerate(values) if isnan(v))
    return ApBreakdown(
        associativity=a,
        peakiness=p,
        ap=_harmonic(a, p),
        per_row_peakiness=per_row,
        excluded_rows=excluded,
    )


def row_accuracy(row: Sequence[int]) -> float | None:
    """max / sum for one row; None when the row is all zero."""
    values = list(row)
    if not values:
        raise RowTooShortError("row accuracy needs at least one entry")
    m = 0
    s = 0
    for v in values:
        try:
            v = operator.index(v)
        except TypeError:
            raise NonIntegerTokenError(f"non-integer count {v!r}") from None
        if v < 0:
            raise NegativeEntryError(f"negative count {v}")
        s += v
        if v > m:
            m = v
    if s == 0:
        return None
    return m / s


def truth_class_accuracy(table: ContingencyTable | Iterable[Iterable[int]]) -> float:
    """Mean over nonzero rows of max / row sum."""
    t = as_table(table)
    if t.total == 0:
        raise ZeroTotalError("truth-class accuracy needs a positive total")
    kernels, data = backends.kernels_and_data(t)
    values = [v for v in kernels.tca_rows(data) if not isnan(v)]
    return sum(values) / len(values)


def cluster_purity(table: ContingencyTable | Iterable[Iterable[int]]) -> float:
    """Mean over nonzero columns of max / column sum."""
    t = as_table(table)
    if t.total == 0:
        raise ZeroTotalError("cluster purity needs a positive total")
    kernels, data = backends.kernels_and_data(t)
    values = [v for v in kernels.purity_cols(data) if not isnan(v)]
    return sum(values) / len(values)


def f1_components(table: ContingencyTable | Iterable[Iterable[int]]) -> tuple[float, float, float]:
    """(truth-class accuracy, cluster purity, f1)."""
    t = as_table(table)
    if t.total == 0:
        raise ZeroTotalError("f1 needs a positive total")
    kernels, data = backends.kernels_and_data(t)
    tca_sum, tca_count, purity_sum, purity_count = kernels.f1_parts(data)
    tca = tca_sum / tca_count
    purity = purity_sum / purity_count
    return tca, purity, _harmonic(tca, purity)


def f1_score(table: ContingencyTable | Iterable[Iterable[int]]) -> F1Breakdown:
    """Table F1 with the excluded all-zero rows and columns recorded."""
    t = as_table(table)
    if t.total == 0:
        raise ZeroTotalError("f1 needs a positive total")
    kernels, data = backends.kernels_and_data(t)
    tca_all = kernels.tca_rows(data)
    purity_all = kernels.purity_cols(data)
    tca_values = [v for v in tca_all if not isnan(v)]
    purity_values = [v for v in purity_all if not isnan(v)]
    tca = sum(tca_values) / len(tca_values)
    purity = sum(purity_values) / len(purity_values)
    return F1Breakdown(
        truth_class_accuracy=tca,
        cluster_purity=purity,
        f1=_harmonic(tca, purity),
        excluded_rows=tuple(i for i, v in enumerate(tca_all) if isnan(v)),
        excluded_cols=tuple(j for j, v in enumerate(purity_all) if isnan(v)),
    )
