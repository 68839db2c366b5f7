"""
Persistent homology of a filtered complex.

Pairs are found one dimension at a time by reducing coboundary columns:
the (d-1)-simplices are processed from last to first and each one is
paired with the earliest d-simplex left as its pivot. A simplex already
known to kill a class in the dimension below is skipped, since its
column would reduce to zero. The resulting pairs are the same as those
of the boundary-matrix reduction, which is run only on demand, over a
prefix of one dimension, to produce representative cycles.
"""

import math

import numpy as np
from loguru import logger

from ..models.barcode import Barcode, PersistenceInterval
from ..models.complex import FilteredComplex, Simplex, SimplexTable
from .error_handling import ArgumentError, IntervalNotFoundError, OperationTimer
from .gf2 import ColumnReduction, Layout, reduce_columns

# Largest encoded key; vertex tuples above it are looked up through a dict.
KEY_LIMIT = 2**62


class SimplexLookup:
    """Row index of a vertex tuple within one :class:`SimplexTable`."""

    def __init__(self, table: SimplexTable):
        vertices = table.vertices
        width = vertices.shape[1]
        base = int(vertices.max()) + 1 if vertices.size else 1
        self.weights: np.ndarray | None = None
        self.rows: dict[tuple[int, ...], int] = {}
        if base**width < KEY_LIMIT:
            self.weights = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
            keys = vertices @ self.weights
            self.order = np.argsort(keys, kind="stable")
            self.keys = keys[self.order]
        else:
            self.rows = {tuple(row): i for i, row in enumerate(vertices.tolist())}

    def find(self, vertices: np.ndarray) -> np.ndarray:
        """Rows of every vertex tuple in ``vertices``; all must be present."""
        if self.weights is None:
            return np.array([self.rows[tuple(v)] for v in vertices.tolist()], dtype=np.int64)
        return self.order[np.searchsorted(self.keys, vertices @ self.weights)]


def face_rows(upper: SimplexTable, lookup: SimplexLookup) -> np.ndarray:
    """Row of every codimension-one face, one column per omitted vertex."""
    width = upper.vertices.shape[1]
    out = np.empty((len(upper), width), dtype=np.int64)
    for k in range(width):
        out[:, k] = lookup.find(np.delete(upper.vertices, k, axis=1))
    return out


def pair_dimension(
    boundary: np.ndarray, n_lower: int, cleared: np.ndarray
) -> tuple[np.ndarray, int]:
    """Pair (d-1)-simplices with the d-simplices that kill them.

    ``boundary`` holds the face rows of every d-simplex. Returns, per
    (d-1)-simplex, the row of its killer or -1, and the number of column
    additions performed.
    """
    killer = np.full(n_lower, -1, dtype=np.int64)
    if n_lower == 0 or len(boundary) == 0:
        return killer, 0

    flat = boundary.ravel()
    order = np.argsort(flat, kind="stable")
    cofaces = np.repeat(np.arange(len(boundary), dtype=np.int64), boundary.shape[1])[order]
    offsets = np.zeros(n_lower + 1, dtype=np.int64)
    np.cumsum(np.bincount(flat, minlength=n_lower), out=offsets[1:])
    starts = offsets.tolist()
    first = np.where(offsets[:-1] < offsets[1:], cofaces[np.minimum(offsets[:-1], len(cofaces) - 1)], -1)
    earliest = first.tolist()
    skip = cleared.tolist()

    owner: dict[int, int] = {}
    reduced: dict[int, set[int]] = {}
    additions = 0
    for a in range(n_lower - 1, -1, -1):
        if skip[a] or earliest[a] < 0:
            continue
        pivot = earliest[a]
        if pivot not in owner:
            owner[pivot] = a
            killer[a] = pivot
            continue
        column = set(cofaces[starts[a] : starts[a + 1]].tolist())
        while column:
            pivot = min(column)
            other = owner.get(pivot)
            if other is None:
                owner[pivot] = a
                reduced[a] = column
                killer[a] = pivot
                break
            partner = reduced.get(other)
            if partner is None:
                partner = set(cofaces[starts[other] : starts[other + 1]].tolist())
            column ^= partner
            additions += 1
    return killer, additions


class CycleBasis:
    """Representative cycles of a complex, computed when first asked for.

    The cycle born at a d-simplex is its column of the transform V in the
    boundary reduction R = D V restricted to dimension d. Each request
    reduces a prefix of the d-simplices at least twice as long as the
    previous one, so repeated requests cost little more than one reduction.
    """

    def __init__(
        self,
        K: FilteredComplex,
        boundaries: dict[int, np.ndarray],
        lookups: dict[int, SimplexLookup],
        layout: Layout = "auto",
    ):
        self.K = K
        self.boundaries = boundaries
        self.lookups = lookups
        self.layout = layout
        self.reductions: dict[int, ColumnReduction] = {}

    def lookup(self, d: int) -> SimplexLookup:
        if d not in self.lookups:
            self.lookups[d] = SimplexLookup(self.K.table(d))
        return self.lookups[d]

    def cycle_of(self, simplex: Simplex) -> tuple[Simplex, ...]:
        d = simplex.dimension
        if d == 0:
            return (simplex,)
        row = int(self.lookup(d).find(np.array([simplex.vertices], dtype=np.int64))[0])
        reduction = self.prefix(d, row + 1)
        assert reduction.transforms is not None
        positions = self.K.table(d).positions
        return tuple(self.K.simplices[int(positions[k])] for k in sorted(reduction.transforms[row]))

    def prefix(self, d: int, count: int) -> ColumnReduction:
        reduction = self.reductions.get(d)
        done = len(reduction.reduced) if reduction is not None else 0
        if reduction is None or done < count:
            boundary = self.boundaries[d]
            size = min(len(boundary), max(count, 2 * done))
            block = boundary[:size]
            reduction = reduce_columns(
                block.tolist(), int(block.max()) + 1, track=True, layout=self.layout
            )
            self.reductions[d] = reduction
            logger.debug(f"Reduced {size} columns of degree {d} for representatives")
        return reduction


def compute_persistence(
    K: FilteredComplex, max_degree: int, layout: Layout = "auto"
) -> Barcode:
    """Barcode of ``K`` in degrees 0..max_degree.

    Zero-length intervals are kept and flagged ephemeral. Every interval
    resolves as representative the cycle formed at its birth simplex;
    ``layout`` selects the column layout used for those cycles.
    """
    if max_degree < 0:
        raise ArgumentError(f"max_degree must be non-negative, got {max_degree}")
    if not K.validated:
        K.validate()
    if not K.simplices:
        return Barcode((), max_degree, 0.0)

    top = min(K.max_dim, max_degree + 1)
    tables = [K.table(d) for d in range(top + 1)]
    lookups: dict[int, SimplexLookup] = {}
    boundaries: dict[int, np.ndarray] = {}
    killers: list[np.ndarray] = []
    negative = [np.zeros(len(tables[0]), dtype=bool)]

    with OperationTimer("pair", "persistence", simplices=len(K)):
        for d in range(1, top + 1):
            lookups[d - 1] = SimplexLookup(tables[d - 1])
            boundaries[d] = face_rows(tables[d], lookups[d - 1])
            killer, additions = pair_dimension(boundaries[d], len(tables[d - 1]), negative[d - 1])
            killers.append(killer)
            killed = np.zeros(len(tables[d]), dtype=bool)
            killed[killer[killer >= 0]] = True
            negative.append(killed)
            logger.debug(
                f"Paired dimension {d - 1} with {d}: {int(killed.sum())} pairs, {additions} column additions"
            )

    cycles = CycleBasis(K, boundaries, lookups, layout)
    simplices = K.simplices
    intervals: list[PersistenceInterval] = []
    for degree in range(min(max_degree, K.max_dim) + 1):
        table = tables[degree]
        born = np.flatnonzero(~negative[degree])
        if degree < len(killers):
            killer = killers[degree][born]
        else:
            killer = np.full(len(born), -1, dtype=np.int64)
        finite = killer >= 0
        after = tables[degree + 1] if degree + 1 < len(tables) else SimplexTable.empty(degree + 1)

        birth = table.appearance[born]
        death = np.full(len(born), math.inf)
        death[finite] = after.appearance[killer[finite]]
        birth_at = table.positions[born]
        death_at = np.full(len(born), -1, dtype=np.int64)
        death_at[finite] = after.positions[killer[finite]]

        order = np.lexsort((birth_at, death, birth))
        for b, dt, bi, di in zip(
            birth[order].tolist(),
            death[order].tolist(),
            birth_at[order].tolist(),
            death_at[order].tolist(),
            strict=True,
        ):
            intervals.append(
                PersistenceInterval(
                    degree, b, dt, simplices[bi], simplices[di] if di >= 0 else None, cycles
                )
            )

    return Barcode(tuple(intervals), max_degree, K.final_parameter)


def persistent_betti(B: Barcode, degree: int, r: float) -> int:
    """Number of classes of ``degree`` alive at parameter ``r``."""
    if r < 0:
        raise ArgumentError(f"Parameter must be non-negative, got {r}")
    return sum(1 for i in B.intervals if i.degree == degree and i.alive_at(r))


def betti_curve(B: Barcode, degree: int, steps: list[float]) -> list[tuple[float, int]]:
    """persistent_betti evaluated at every filtration step."""
    return [(r, persistent_betti(B, degree, r)) for r in steps]


def representative_cycle(B: Barcode, interval: PersistenceInterval) -> list[Simplex]:
    """Cycle representing ``interval`` at its birth parameter."""
    if interval not in B:
        raise IntervalNotFoundError(
            f"No degree-{interval.degree} interval [{interval.birth}, {interval.death}) "
            f"born at {interval.birth_simplex.label()} in this barcode"
        )
    return list(interval.representative)
