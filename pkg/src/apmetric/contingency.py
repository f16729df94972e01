"""Contingency tables and their interchange formats.

A contingency table cross-tabulates two partitions of the same sample: rows are
ground-truth classes, columns are predicted clusters, and cell (i, j) counts the
samples of class i placed in cluster j. Tables are immutable once constructed and
validated eagerly: rectangular, at least 1x1, all entries non-negative integers.
An all-zero table is constructible (the zero-total condition is checked by the
operations that need mass, not by the constructor).
"""

from __future__ import annotations

import operator
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyInputError,
    EmptyTableError,
    InvalidLabelError,
    LengthMismatchError,
    NegativeEntryError,
    NonIntegerTokenError,
    RaggedRowsError,
    ZeroTotalError,
)

__all__ = [
    "ContingencyTable",
    "LabelPair",
    "validate",
    "to_labels",
    "from_labels",
    "parse_csv",
    "serialize_csv",
]


def _as_count(value: object, where: str) -> int:
    try:
        count = operator.index(value)  # type: ignore[arg-type]
    except TypeError:
        raise NonIntegerTokenError(f"non-integer count {value!r} at {where}") from None
    if count < 0:
        raise NegativeEntryError(f"negative count {count} at {where}")
    return count


class ContingencyTable:
    """Immutable rectangular grid of non-negative integer counts."""

    __slots__ = ("_counts", "__dict__")

    def __init__(self, counts: Iterable[Iterable[int]]):
        rows = []
        width = None
        for i, raw_row in enumerate(counts):
            row = tuple(_as_count(v, f"row {i}, column {j}") for j, v in enumerate(raw_row))
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise RaggedRowsError(
                    f"row {i} has {len(row)} entries, expected {width}"
                )
            rows.append(row)
        if not rows or width == 0:
            raise EmptyTableError("table must have at least one row and one column")
        self._counts = tuple(rows)

    @property
    def counts(self) -> tuple[tuple[int, ...], ...]:
        return self._counts

    @property
    def n_rows(self) -> int:
        return len(self._counts)

    @property
    def n_cols(self) -> int:
        return len(self._counts[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @cached_property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self._counts)

    @cached_property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self._counts))

    @cached_property
    def total(self) -> int:
        return sum(self.row_sums)

    def row(self, i: int) -> tuple[int, ...]:
        return self._counts[i]

    def transpose(self) -> "ContingencyTable":
        return ContingencyTable(zip(*self._counts))

    def as_array(self) -> np.ndarray:
        """Read-only int64 view of the counts, cached per table."""
        return self._array

    @cached_property
    def _array(self) -> np.ndarray:
        arr = np.array(self._counts, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ContingencyTable):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._counts)

    def __repr__(self) -> str:
        return f"ContingencyTable({self.n_rows}x{self.n_cols}, total={self.total})"


def as_table(obj: "ContingencyTable | Iterable[Iterable[int]]") -> ContingencyTable:
    """Coerce nested sequences (or pass through an existing table)."""
    if isinstance(obj, ContingencyTable):
        return obj
    return ContingencyTable(obj)


def validate(table: ContingencyTable) -> ContingencyTable:
    """Re-assert the structural invariants and return the table unchanged.

    Construction already validates; this re-checks a table that may have come
    from unpickling or other backdoor paths.
    """
    if not isinstance(table, ContingencyTable):
        return as_table(table)
    counts = table.counts
    if not counts or not counts[0]:
        raise EmptyTableError("table must have at least one row and one column")
    width = len(counts[0])
    for i, row in enumerate(counts):
        if len(row) != width:
            raise RaggedRowsError(f"row {i} has {len(row)} entries, expected {width}")
        for j, v in enumerate(row):
            _as_count(v, f"row {i}, column {j}")
    return table


class LabelPair:
    """Two aligned label vectors: ground truth and prediction.

    Labels are non-negative integers; position k of each vector describes the
    same sample.
    """

    __slots__ = ("_truth", "_predicted")

    def __init__(self, truth: Iterable[int], predicted: Iterable[int]):
        self._truth = tuple(self._check(v, "truth", k) for k, v in enumerate(truth))
        self._predicted = tuple(
            self._check(v, "predicted", k) for k, v in enumerate(predicted)
        )
        if len(self._truth) != len(self._predicted):
            raise LengthMismatchError(
                f"truth has {len(self._truth)} labels, predicted has {len(self._predicted)}"
            )
        if not self._truth:
            raise EmptyInputError("label vectors must be non-empty")

    @staticmethod
    def _check(value: object, which: str, k: int) -> int:
        try:
            label = operator.index(value)  # type: ignore[arg-type]
        except TypeError:
            raise InvalidLabelError(f"non-integer {which} label {value!r} at {k}") from None
        if label < 0:
            raise InvalidLabelError(f"negative {which} label {label} at {k}")
        return label

    @property
    def truth(self) -> tuple[int, ...]:
        return self._truth

    @property
    def predicted(self) -> tuple[int, ...]:
        return self._predicted

    def __len__(self) -> int:
        return len(self._truth)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LabelPair):
            return self._truth == other._truth and self._predicted == other._predicted
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._truth, self._predicted))

    def __repr__(self) -> str:
        return f"LabelPair(n={len(self)})"


def to_labels(table: ContingencyTable) -> LabelPair:
    """Expand a table into label vectors, row-major.

    Cell (i, j) contributes its count of consecutive samples with truth label i
    and predicted label j. Requires a positive total.
    """
    table = as_table(table)
    if table.total == 0:
        raise ZeroTotalError("cannot expand a table with zero total")
    truth: list[int] = []
    predicted: list[int] = []
    for i, row in enumerate(table.counts):
        for j, v in enumerate(row):
            truth.extend([i] * v)
            predicted.extend([j] * v)
    return LabelPair(truth, predicted)


def from_labels(pair: LabelPair) -> ContingencyTable:
    """Tabulate a label pair; shape is (max truth label + 1, max predicted label + 1)."""
    n_rows = max(pair.truth) + 1
    n_cols = max(pair.predicted) + 1
    grid = [[0] * n_cols for _ in range(n_rows)]
    for t, p in zip(pair.truth, pair.predicted):
        grid[t][p] += 1
    return ContingencyTable(grid)


def parse_csv(text: str) -> ContingencyTable:
    """Parse a comma-separated integer grid.

    Accepts LF or CRLF line endings and an optional trailing newline; tokens may
    carry surrounding whitespace. Raises the usual structural errors on ragged
    or non-integer input.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise EmptyTableError("no rows in CSV input")
    rows = []
    for i, line in enumerate(lines):
        tokens = [tok.strip() for tok in line.split(",")]
        row = []
        for j, tok in enumerate(tokens):
            try:
                row.append(int(tok))
            except ValueError:
                raise NonIntegerTokenError(
                    f"non-integer token {tok!r} at row {i}, column {j}"
                ) from None
        rows.append(row)
    return ContingencyTable(rows)


def serialize_csv(table: ContingencyTable) -> str:
    """Emit the table as comma-separated rows with LF endings and a trailing newline."""
    table = as_table(table)
    return "".join(",".join(str(v) for v in row) + "\n" for row in table.counts)
