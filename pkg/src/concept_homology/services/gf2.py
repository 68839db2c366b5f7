"""
Linear algebra over the two-element field.

Matrices are stored column-wise as sets of row indices. Column reduction
has two interchangeable layouts: a sparse layout working on Python sets
and a bitset layout packing each column into an int, where XOR of two
columns is a single big-integer operation. Both produce identical results.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .error_handling import ArgumentError

Layout = Literal["auto", "sparse", "bitset"]

# Column height up to which the bitset layout is chosen automatically.
BITSET_WORDS = 256
BITSET_MAX_ROWS = 64 * BITSET_WORDS


@dataclass(frozen=True)
class GF2Matrix:
    """Sparse matrix over GF(2); every stored entry is a 1."""

    rows: int
    cols: int
    columns: tuple[frozenset[int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ArgumentError(f"Matrix shape must be non-negative, got {self.rows}x{self.cols}")
        if len(self.columns) != self.cols:
            raise ArgumentError(
                f"Matrix declares {self.cols} columns but stores {len(self.columns)}"
            )
        for j, column in enumerate(self.columns):
            if any(r < 0 or r >= self.rows for r in column):
                raise ArgumentError(f"Column {j} has a row index outside 0..{self.rows - 1}")

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Iterable[int]]) -> "GF2Matrix":
        """Build a matrix, cancelling repeated entries in pairs."""
        packed = []
        for column in columns:
            entries: set[int] = set()
            for r in column:
                entries ^= {r}
            packed.append(frozenset(entries))
        return cls(rows, len(packed), tuple(packed))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(rows, cols, tuple(frozenset() for _ in range(cols)))

    @classmethod
    def from_dense(cls, array: np.ndarray) -> "GF2Matrix":
        dense = np.asarray(array) % 2
        rows, cols = dense.shape
        return cls(
            rows,
            cols,
            tuple(frozenset(int(r) for r in np.flatnonzero(dense[:, j])) for j in range(cols)),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def nnz(self) -> int:
        return sum(len(column) for column in self.columns)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for j, column in enumerate(self.columns):
            for r in column:
                dense[r, j] = 1
        return dense

    def is_zero(self) -> bool:
        return all(not column for column in self.columns)

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.cols != other.rows:
            raise ArgumentError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        product = (self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)) % 2
        return GF2Matrix.from_dense(product)


@dataclass
class ColumnReduction:
    """Outcome of left-to-right column reduction.

    ``reduced[j]`` is column j of R and ``transforms[j]`` column j of V,
    with R = M V. ``pivots`` maps a lowest row index to the column that
    owns it.
    """

    reduced: list[frozenset[int]]
    pivots: dict[int, int]
    transforms: list[frozenset[int]] | None = None
    additions: int = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def zero_columns(self) -> list[int]:
        return [j for j, column in enumerate(self.reduced) if not column]


def _bits(value: int) -> frozenset[int]:
    out = []
    while value:
        lowest = value & -value
        out.append(lowest.bit_length() - 1)
        value ^= lowest
    return frozenset(out)


def _reduce_bitset(columns: Sequence[Iterable[int]], track: bool) -> ColumnReduction:
    reduced: list[int] = []
    transforms: list[int] = []
    pivots: dict[int, int] = {}
    additions = 0

    for j, column in enumerate(columns):
        col = 0
        for r in column:
            col ^= 1 << r
        v = 1 << j if track else 0
        while col:
            low = col.bit_length() - 1
            k = pivots.get(low)
            if k is None:
                pivots[low] = j
                break
            col ^= reduced[k]
            if track:
                v ^= transforms[k]
            additions += 1
        reduced.append(col)
        transforms.append(v)

    return ColumnReduction(
        reduced=[_bits(c) for c in reduced],
        pivots=pivots,
        transforms=[_bits(v) for v in transforms] if track else None,
        additions=additions,
    )


def _reduce_sparse(columns: Sequence[Iterable[int]], track: bool) -> ColumnReduction:
    reduced: list[set[int]] = []
    transforms: list[set[int]] = []
    pivots: dict[int, int] = {}
    additions = 0

    for j, column in enumerate(columns):
        col: set[int] = set()
        for r in column:
            col ^= {r}
        v = {j} if track else set()
        while col:
            low = max(col)
            k = pivots.get(low)
            if k is None:
                pivots[low] = j
                break
            col ^= reduced[k]
            if track:
                v ^= transforms[k]
            additions += 1
        reduced.append(col)
        transforms.append(v)

    return ColumnReduction(
        reduced=[frozenset(c) for c in reduced],
        pivots=pivots,
        transforms=[frozenset(v) for v in transforms] if track else None,
        additions=additions,
    )


def reduce_columns(
    columns: Sequence[Iterable[int]],
    rows: int,
    *,
    track: bool = False,
    layout: Layout = "auto",
) -> ColumnReduction:
    """Reduce columns left to right with lowest-one pivoting.

    Column j is repeatedly added to the earlier column owning its lowest
    one until its lowest one is unclaimed or the column vanishes. With
    ``track`` the accumulated column operations are returned as V.
    """
    if layout == "auto":
        layout = "bitset" if rows <= BITSET_MAX_ROWS else "sparse"
    if layout == "bitset":
        return _reduce_bitset(columns, track)
    if layout == "sparse":
        return _reduce_sparse(columns, track)
    raise ArgumentError(f"Unknown reduction layout: {layout}")


def rank_gf2(M: GF2Matrix, layout: Layout = "auto") -> int:
    """Rank over GF(2) by column elimination."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return reduce_columns(M.columns, M.rows, layout=layout).rank


def null_space_basis(M: GF2Matrix, layout: Layout = "auto") -> list[frozenset[int]]:
    """Basis of the null space, each vector given by its nonzero coordinates."""
    reduction = reduce_columns(M.columns, M.rows, track=True, layout=layout)
    assert reduction.transforms is not None
    return [reduction.transforms[j] for j in reduction.zero_columns()]
