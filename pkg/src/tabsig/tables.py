"""Contingency tables, hypothesis designs, and exhaustive table-space enumeration."""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np


class Hypothesis(Enum):
    """Null hypotheses with enumerable table spaces."""

    HOMOGENEITY = "homogeneity"
    INDEPENDENCE = "independence"
    HARDY_WEINBERG = "hardy-weinberg"


@dataclass(frozen=True)
class ContingencyTable:
    """Immutable grid of nonnegative counts; genotype vectors are 1x3 tables."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise ValueError("table needs at least one row and one column")
        width = len(self.cells[0])
        for row in self.cells:
            if len(row) != width:
                raise ValueError("rows must all have the same length")
            for value in row:
                if operator.index(value) < 0:
                    raise ValueError("cell counts must be nonnegative integers")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "ContingencyTable":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    @property
    def row_margins(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.cells)

    @property
    def col_margins(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.cells))

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.cells)

    def flat(self) -> tuple[int, ...]:
        """Cells read row-major."""
        return tuple(v for row in self.cells for v in row)

    def to_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=np.int64)


@dataclass(frozen=True)
class HypothesisSpec:
    """A null hypothesis plus the design quantities it holds fixed.

    Homogeneity fixes the row margins (one multinomial per row); independence
    and Hardy-Weinberg fix the grand total of a single multinomial.
    """

    kind: Hypothesis
    row_margins: tuple[int, ...] | None = None
    cols: int | None = None
    shape: tuple[int, int] | None = None
    total: int | None = None

    def __post_init__(self):
        if self.kind is Hypothesis.HOMOGENEITY:
            if self.row_margins is None or self.cols is None:
                raise ValueError("homogeneity design needs row margins and a column count")
            if self.cols < 2 or len(self.row_margins) < 1 or any(m < 0 for m in self.row_margins):
                raise ValueError("homogeneity design: margins >= 0 and at least 2 columns")
        elif self.kind is Hypothesis.INDEPENDENCE:
            if self.shape is None or self.total is None:
                raise ValueError("independence design needs table dimensions and a grand total")
            rows, cols = self.shape
            if rows < 2 or cols < 2 or self.total < 0:
                raise ValueError("independence design: at least 2x2 and total >= 0")
        elif self.total is None or self.total < 0:
            raise ValueError("Hardy-Weinberg design needs a total >= 0")

    @classmethod
    def homogeneity(cls, row_margins: Sequence[int], cols: int = 2) -> "HypothesisSpec":
        return cls(
            Hypothesis.HOMOGENEITY,
            row_margins=tuple(int(m) for m in row_margins),
            cols=int(cols),
        )

    @classmethod
    def independence(cls, rows: int, cols: int, total: int) -> "HypothesisSpec":
        return cls(Hypothesis.INDEPENDENCE, shape=(int(rows), int(cols)), total=int(total))

    @classmethod
    def hardy_weinberg(cls, total: int) -> "HypothesisSpec":
        return cls(Hypothesis.HARDY_WEINBERG, total=int(total))

    @classmethod
    def for_table(cls, kind: Hypothesis, table: ContingencyTable) -> "HypothesisSpec":
        """The design whose fixed quantities match the observed table."""
        if kind is Hypothesis.HOMOGENEITY:
            return cls.homogeneity(table.row_margins, table.cols)
        if kind is Hypothesis.INDEPENDENCE:
            return cls.independence(table.rows, table.cols, table.total)
        if (table.rows, table.cols) != (1, 3):
            raise ValueError("Hardy-Weinberg tables are 1x3 genotype count vectors")
        return cls.hardy_weinberg(table.total)

    @property
    def table_shape(self) -> tuple[int, int]:
        if self.kind is Hypothesis.HOMOGENEITY:
            return len(self.row_margins), self.cols
        if self.kind is Hypothesis.INDEPENDENCE:
            return self.shape
        return 1, 3

    def validate_table(self, table: ContingencyTable) -> None:
        """Raise if the table does not fit this design."""
        if (table.rows, table.cols) != self.table_shape:
            raise ValueError(
                f"table shape {(table.rows, table.cols)} does not match design {self.table_shape}"
            )
        if self.kind is Hypothesis.HOMOGENEITY:
            if table.row_margins != self.row_margins:
                raise ValueError(
                    f"row margins {table.row_margins} do not match design {self.row_margins}"
                )
        elif table.total != self.total:
            raise ValueError(f"table total {table.total} does not match design total {self.total}")


def iter_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of `total` into `parts` parts, ascending lexicographically."""
    if total < 0 or parts < 1:
        raise ValueError("need total >= 0 and parts >= 1")
    if parts == 1:
        yield (total,)
        return
    for dividers in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for d in dividers:
            out.append(d - prev - 1)
            prev = d
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def count_tables(spec: HypothesisSpec) -> int:
    """Closed-form size of the table space; equals the enumeration stream length."""
    if spec.kind is Hypothesis.HOMOGENEITY:
        count = 1
        for m in spec.row_margins:
            count *= math.comb(m + spec.cols - 1, spec.cols - 1)
        return count
    if spec.kind is Hypothesis.INDEPENDENCE:
        k = spec.shape[0] * spec.shape[1]
        return math.comb(spec.total + k - 1, k - 1)
    return math.comb(spec.total + 2, 2)


def _iter_flat_cells(spec: HypothesisSpec) -> Iterator[tuple[int, ...]]:
    if spec.kind is Hypothesis.HOMOGENEITY:
        per_row = [list(iter_compositions(m, spec.cols)) for m in spec.row_margins]
        for rows in itertools.product(*per_row):
            yield tuple(itertools.chain.from_iterable(rows))
    elif spec.kind is Hypothesis.INDEPENDENCE:
        yield from iter_compositions(spec.total, spec.shape[0] * spec.shape[1])
    else:
        yield from iter_compositions(spec.total, 3)


def enumerate_tables(spec: HypothesisSpec) -> Iterator[ContingencyTable]:
    """Every table of the design exactly once, lexicographic over row-major cells."""
    rows, cols = spec.table_shape
    for flat in _iter_flat_cells(spec):
        yield ContingencyTable(tuple(flat[i * cols : (i + 1) * cols] for i in range(rows)))


def iter_cell_chunks(spec: HypothesisSpec, chunk_size: int = 1 << 16) -> Iterator[np.ndarray]:
    """Row-major cell matrices of shape (chunk, rows*cols) in enumeration order."""
    k = spec.table_shape[0] * spec.table_shape[1]
    remaining = count_tables(spec)
    flat = itertools.chain.from_iterable(_iter_flat_cells(spec))
    while remaining:
        take = min(chunk_size, remaining)
        yield np.fromiter(flat, dtype=np.int64, count=take * k).reshape(take, k)
        remaining -= take
