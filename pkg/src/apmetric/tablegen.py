"""Synthetic contingency tables with a fixed total.

A table is built by splitting the total into rows*cols non-negative parts: draw
rows*cols - 1 divider positions in [0, total), sort them, and take consecutive
differences. Uniform divider draws (LOW mode) yield parts that are rarely zero
and of comparable magnitude, simulating a low-performing clustering. HIGH mode
weights the divider value 0 heavily (default 1000:1 against any single other
value), which piles up duplicate dividers and therefore zero parts; the flat
vector is then shuffled so the zeros spread over the whole table instead of
pooling in the leading rows. The nonzero parts grow correspondingly large,
simulating a high-performing clustering.

Determinism: each table is produced by its own generator stream derived from
(seed, table index), so table k of a run does not depend on how many tables
were drawn before it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from .contingency import ContingencyTable
from .errors import InvalidSpecError

__all__ = [
    "TableMode",
    "GenSpec",
    "table_rng",
    "random_sum_vector",
    "generate_table",
    "generate_tables",
]

DEFAULT_ZERO_WEIGHT = 1000.0


class TableMode(str, Enum):
    """Target performance regime of generated tables."""

    LOW = "low"
    HIGH = "high"


def _as_mode(mode: "TableMode | str") -> TableMode:
    try:
        return TableMode(mode)
    except ValueError:
        raise InvalidSpecError(f"mode must be 'low' or 'high', got {mode!r}") from None


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one family of random tables."""

    rows: int
    cols: int
    total: int
    mode: TableMode
    zero_weight: float = DEFAULT_ZERO_WEIGHT
    seed: int = 0

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise InvalidSpecError(f"shape {self.rows}x{self.cols} must be at least 1x1")
        if self.total < 1:
            raise InvalidSpecError(f"total {self.total} must be at least 1")
        object.__setattr__(self, "mode", _as_mode(self.mode))
        if not self.zero_weight >= 1:
            raise InvalidSpecError(f"zero_weight {self.zero_weight} must be at least 1")


def table_rng(seed: int, index: int) -> np.random.Generator:
    """Independent per-table stream: PCG64 seeded from (seed, index)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, index))))


def random_sum_vector(
    total: int,
    numvals: int,
    mode: TableMode | str = TableMode.LOW,
    zero_weight: float = DEFAULT_ZERO_WEIGHT,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Split total into numvals non-negative parts via sorted dividers.

    Returns an int64 vector of length numvals summing to total. In HIGH mode
    each divider is 0 with probability zero_weight / (zero_weight + total - 1)
    and uniform on {1, ..., total-1} otherwise, which is the same distribution
    as weighting value 0 by zero_weight against weight 1 for every other value
    in range(total).
    """
    if total < 1:
        raise InvalidSpecError(f"total {total} must be at least 1")
    if numvals < 1:
        raise InvalidSpecError(f"numvals {numvals} must be at least 1")
    mode = _as_mode(mode)
    if not zero_weight >= 1:
        raise InvalidSpecError(f"zero_weight {zero_weight} must be at least 1")
    if rng is None:
        rng = np.random.default_rng()
    k = numvals - 1
    if k == 0:
        return np.array([total], dtype=np.int64)
    if mode is TableMode.LOW:
        dividers = rng.integers(0, total, size=k, dtype=np.int64)
    else:
        if total == 1:
            dividers = np.zeros(k, dtype=np.int64)
        else:
            p_zero = zero_weight / (zero_weight + total - 1)
            take_zero = rng.random(k) < p_zero
            nonzero = rng.integers(1, total, size=k, dtype=np.int64)
            dividers = np.where(take_zero, np.int64(0), nonzero)
    dividers.sort()
    edges = np.concatenate(([0], dividers, [total]))
    return np.diff(edges).astype(np.int64)


def generate_table(spec: GenSpec, rng: np.random.Generator | None = None) -> ContingencyTable:
    """One random table for the spec; defaults to the stream for table index 0."""
    if rng is None:
        rng = table_rng(spec.seed, 0)
    flat = random_sum_vector(spec.total, spec.rows * spec.cols, spec.mode, spec.zero_weight, rng)
    if spec.mode is TableMode.HIGH:
        rng.shuffle(flat)
    return ContingencyTable(flat.reshape(spec.rows, spec.cols))


def generate_tables(spec: GenSpec, count: int) -> Iterator[ContingencyTable]:
    """Count tables, each from its own (spec.seed, index) stream."""
    if count < 0:
        raise InvalidSpecError(f"count {count} must be non-negative")
    for index in range(count):
        yield generate_table(spec, table_rng(spec.seed, index))
