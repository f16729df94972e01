"""Shared fixtures: golden tables and seeded random-table factories.

The two reference tables are the worked example used throughout the test
suite: FIG1 is the 4x4 table (total 2521) and T10 is the same data extended
with five extra cluster columns, two of them all zero (total 2802).
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from apmetric.contingency import ContingencyTable, to_labels

FIG1_ROWS = (
    (151, 88, 72, 260),
    (302, 330, 0, 158),
    (161, 0, 313, 81),
    (490, 0, 101, 14),
)

T10_ROWS = (
    (151, 88, 72, 260, 21, 0, 0, 55, 13),
    (302, 330, 0, 158, 24, 0, 0, 9, 0),
    (161, 0, 313, 81, 7, 0, 0, 1, 65),
    (490, 0, 101, 14, 82, 0, 0, 0, 4),
)


@pytest.fixture
def fig1() -> ContingencyTable:
    return ContingencyTable(FIG1_ROWS)


@pytest.fixture
def t10() -> ContingencyTable:
    return ContingencyTable(T10_ROWS)


def random_table(
    rng: np.random.Generator,
    max_dim: int = 5,
    max_cell: int = 16,
    min_total: int = 2,
    zero_fraction: float = 0.3,
) -> ContingencyTable:
    """Random small table with a sprinkling of zero cells; total >= min_total."""
    while True:
        r = int(rng.integers(1, max_dim + 1))
        c = int(rng.integers(1, max_dim + 1))
        cells = rng.integers(0, max_cell + 1, size=(r, c))
        cells[rng.random((r, c)) < zero_fraction] = 0
        table = ContingencyTable(cells.tolist())
        if table.total >= min_total:
            return table


def random_metric_table(
    rng: np.random.Generator,
    max_dim: int = 5,
    max_cell: int = 16,
) -> ContingencyTable:
    """Random table accepted by every metric: at least 2x2 and positive total."""
    while True:
        r = int(rng.integers(2, max_dim + 1))
        c = int(rng.integers(2, max_dim + 1))
        cells = rng.integers(0, max_cell + 1, size=(r, c))
        cells[rng.random((r, c)) < 0.25] = 0
        table = ContingencyTable(cells.tolist())
        if table.total >= 2:
            return table


def tie_free(table: ContingencyTable) -> bool:
    """True when every row has a strictly unique maximum entry."""
    for row in table.counts:
        m = max(row)
        if sum(1 for v in row if v == m) != 1:
            return False
    return True


def permutation_emi(
    table: ContingencyTable, n_perm: int, seed: int, chunk: int = 50_000
) -> tuple[float, float]:
    """Empirical (mean, standard error) of MI over random label permutations.

    Shuffles the predicted labels while both marginals stay fixed; chunked so
    large permutation counts keep a bounded footprint.
    """
    pair = to_labels(table)
    truth = np.array(pair.truth, dtype=np.int64)
    pred = np.array(pair.predicted, dtype=np.int64)
    n = len(truth)
    n_rows, n_cols = table.shape
    rng = np.random.default_rng(seed)
    row_sums = np.bincount(truth, minlength=n_rows).astype(np.float64)
    col_sums = np.bincount(pred, minlength=n_cols).astype(np.float64)
    denom = (row_sums[:, None] * col_sums[None, :]).ravel()
    mi_samples = np.empty(n_perm, dtype=np.float64)
    done = 0
    while done < n_perm:
        size = min(chunk, n_perm - done)
        perms = rng.permuted(np.tile(pred, (size, 1)), axis=1)
        cell = truth[None, :] * n_cols + perms
        flat = (np.arange(size, dtype=np.int64)[:, None] * (n_rows * n_cols) + cell).ravel()
        counts = np.bincount(flat, minlength=size * n_rows * n_cols).reshape(size, -1)
        terms = np.where(
            counts > 0, (counts / n) * np.log(np.maximum(counts, 1) * n / denom), 0.0
        )
        mi_samples[done : done + size] = terms.sum(axis=1)
        done += size
    return float(mi_samples.mean()), float(mi_samples.std(ddof=1) / math.sqrt(n_perm))
