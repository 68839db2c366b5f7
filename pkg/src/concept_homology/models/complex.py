"""
Simplices and filtered simplicial complexes.

A simplex is a sorted tuple of integer vertex ids together with its time
of appearance. A filtered complex is a face-closed, monotone collection of
simplices kept in canonical order: appearance, then dimension, then
lexicographic vertices.
"""

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any

import numpy as np

from ..services.error_handling import ArgumentError, StructuralError

VertexId = int


@dataclass(frozen=True, slots=True)
class Simplex:
    """A p-simplex with its time of appearance."""

    vertices: tuple[VertexId, ...]
    appearance: float = 0.0

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    @property
    def sort_key(self) -> tuple[float, int, tuple[VertexId, ...]]:
        return (self.appearance, self.dimension, self.vertices)

    def label(self) -> str:
        return "[" + " ".join(f"v{v}" for v in self.vertices) + "]"

    def to_dict(self) -> dict[str, Any]:
        return {"vertices": list(self.vertices), "appearance": self.appearance}

    @classmethod
    def of(cls, vertices: Iterable[int], appearance: float = 0.0) -> "Simplex":
        """Build a simplex from any vertex iterable, sorting it."""
        ordered = tuple(sorted(int(v) for v in vertices))
        return cls(ordered, float(appearance))


def faces(s: Simplex) -> list[Simplex]:
    """Codimension-one faces, ordered by the index of the omitted vertex."""
    if s.dimension < 1:
        return []
    return [
        Simplex(s.vertices[:k] + s.vertices[k + 1 :], s.appearance)
        for k in range(len(s.vertices))
    ]


@dataclass(frozen=True, eq=False)
class SimplexTable:
    """The simplices of one dimension as arrays, rows in filtration order.

    ``positions`` are indices into :attr:`FilteredComplex.simplices`,
    ``vertices`` has one row of d+1 sorted vertex ids per simplex.
    """

    dimension: int
    positions: np.ndarray
    vertices: np.ndarray
    appearance: np.ndarray

    def __len__(self) -> int:
        return len(self.positions)

    @classmethod
    def empty(cls, dimension: int) -> "SimplexTable":
        return cls(
            dimension,
            np.zeros(0, dtype=np.int64),
            np.zeros((0, dimension + 1), dtype=np.int64),
            np.zeros(0, dtype=float),
        )


@dataclass(frozen=True)
class FilteredComplex:
    """Face-closed set of simplices ordered by time of appearance.

    Instances are normally produced by :func:`build_complex` or one of the
    builders, which guarantee every invariant and set ``validated``. Direct
    construction does not validate; call :meth:`validate` before relying on
    the invariants. Builders may also hand over the per-dimension
    ``arrays`` they already hold; otherwise they are derived on first use.
    """

    simplices: tuple[Simplex, ...] = ()
    validated: bool = field(default=False, compare=False, repr=False)
    arrays: tuple[SimplexTable, ...] | None = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.simplices)

    def __contains__(self, vertices: object) -> bool:
        if isinstance(vertices, Simplex):
            vertices = vertices.vertices
        return vertices in self.index

    @cached_property
    def max_dim(self) -> int:
        """Largest simplex dimension, -1 for the empty complex."""
        if self.arrays is not None:
            return len(self.arrays) - 1
        return max((s.dimension for s in self.simplices), default=-1)

    @cached_property
    def index(self) -> dict[tuple[VertexId, ...], int]:
        """Position of every vertex tuple in canonical order."""
        return {s.vertices: i for i, s in enumerate(self.simplices)}

    @cached_property
    def tables(self) -> tuple[SimplexTable, ...]:
        """One :class:`SimplexTable` per dimension 0..max_dim."""
        if self.arrays is not None:
            return self.arrays
        grouped: list[list[int]] = [[] for _ in range(self.max_dim + 1)]
        for i, s in enumerate(self.simplices):
            grouped[s.dimension].append(i)
        out = []
        for d, positions in enumerate(grouped):
            members = [self.simplices[i] for i in positions]
            out.append(
                SimplexTable(
                    d,
                    np.array(positions, dtype=np.int64),
                    np.array([s.vertices for s in members], dtype=np.int64).reshape(len(members), d + 1),
                    np.array([s.appearance for s in members], dtype=float),
                )
            )
        return tuple(out)

    def table(self, d: int) -> SimplexTable:
        if d < 0 or d > self.max_dim:
            return SimplexTable.empty(max(d, 0))
        return self.tables[d]

    @property
    def final_parameter(self) -> float:
        return max((float(t.appearance.max()) for t in self.tables if len(t)), default=0.0)

    def appearance_of(self, vertices: tuple[VertexId, ...]) -> float:
        return self.simplices[self.index[vertices]].appearance

    def of_dimension(self, d: int) -> list[Simplex]:
        return [s for s in self.simplices if s.dimension == d]

    def vertices(self) -> list[VertexId]:
        return sorted(s.vertices[0] for s in self.simplices if s.dimension == 0)

    def counts(self) -> list[int]:
        """Number of simplices per dimension 0..max_dim."""
        return [len(t) for t in self.tables]

    def steps(self) -> list[float]:
        """Sorted distinct appearance values (the filtration steps)."""
        return sorted({s.appearance for s in self.simplices})

    def snapshot(self, r: float) -> "FilteredComplex":
        """The complex K_r of simplices that have appeared by parameter r."""
        return FilteredComplex(
            tuple(s for s in self.simplices if s.appearance <= r), validated=self.validated
        )

    def induced(self, vertices: Iterable[VertexId]) -> "FilteredComplex":
        """Subcomplex of simplices whose vertices all lie in ``vertices``."""
        keep = set(vertices)
        return FilteredComplex(
            tuple(s for s in self.simplices if keep.issuperset(s.vertices)),
            validated=self.validated,
        )

    def validate(self) -> None:
        """Check ordering, uniqueness, face closure and monotonicity."""
        seen: set[tuple[VertexId, ...]] = set()
        previous = None
        for s in self.simplices:
            _check_simplex(s)
            if s.vertices in seen:
                raise StructuralError(f"Duplicate simplex {s.label()}")
            seen.add(s.vertices)
            if previous is not None and s.sort_key < previous.sort_key:
                raise StructuralError(
                    f"Simplex {s.label()} is out of filtration order after {previous.label()}"
                )
            previous = s

        for s in self.simplices:
            for face in faces(s):
                position = self.index.get(face.vertices)
                if position is None:
                    raise StructuralError(
                        f"Face {face.label()} of {s.label()} is missing from the complex"
                    )
                if self.simplices[position].appearance > s.appearance:
                    raise StructuralError(
                        f"Non-monotone filtration: face {face.label()} appears at "
                        f"{self.simplices[position].appearance} after {s.label()} at {s.appearance}"
                    )


def _check_simplex(s: Simplex) -> None:
    if not s.vertices:
        raise StructuralError("Simplex with no vertices")
    if any(v < 0 for v in s.vertices):
        raise StructuralError(f"Negative vertex id in {s.label()}")
    if len(set(s.vertices)) != len(s.vertices):
        raise StructuralError(f"Duplicate vertex in simplex {s.label()}")
    if any(a > b for a, b in zip(s.vertices, s.vertices[1:], strict=False)):
        raise StructuralError(f"Vertices of {s.label()} are not sorted")
    if not math.isfinite(s.appearance) or s.appearance < 0:
        raise StructuralError(
            f"Appearance of {s.label()} must be finite and non-negative, got {s.appearance}"
        )


def build_complex(simplices: Iterable[Simplex]) -> FilteredComplex:
    """Close a collection of simplices under faces and sort it.

    Duplicated vertex lists keep their minimum appearance. A face that is
    missing is synthesized at the minimum appearance of its cofaces; a face
    that was given explicitly but appears after one of its cofaces is a
    structural error.
    """
    by_key: dict[tuple[VertexId, ...], float] = {}
    for s in simplices:
        if len(set(s.vertices)) != len(s.vertices):
            raise StructuralError(f"Duplicate vertex in simplex {s.label()}")
        normalized = Simplex.of(s.vertices, s.appearance)
        _check_simplex(normalized)
        current = by_key.get(normalized.vertices)
        if current is None or normalized.appearance < current:
            by_key[normalized.vertices] = normalized.appearance

    given = set(by_key)
    top = max((len(key) - 1 for key in by_key), default=-1)

    for dim in range(top, 0, -1):
        for key in [k for k in by_key if len(k) == dim + 1]:
            appearance = by_key[key]
            for face in combinations(key, dim):
                if face in given:
                    if by_key[face] > appearance:
                        raise StructuralError(
                            f"Non-monotone filtration: face {Simplex(face).label()} appears at "
                            f"{by_key[face]} after its coface {Simplex(key).label()} at {appearance}"
                        )
                elif face not in by_key or appearance < by_key[face]:
                    by_key[face] = appearance

    ordered = sorted(
        (Simplex(key, appearance) for key, appearance in by_key.items()),
        key=lambda s: s.sort_key,
    )
    complex_ = FilteredComplex(tuple(ordered))
    complex_.validate()
    return FilteredComplex(complex_.simplices, validated=True)


def assemble_complex(layers: list[tuple[np.ndarray, np.ndarray]]) -> FilteredComplex:
    """Complex from per-dimension ``(vertices, appearance)`` arrays.

    ``layers[d]`` holds the d-simplices as rows of sorted vertex ids. The
    caller guarantees face closure and monotonicity; this only sorts into
    canonical order. Layers after the first empty one are ignored.
    """
    kept: list[tuple[np.ndarray, np.ndarray]] = []
    for vertices, appearance in layers:
        if len(vertices) == 0:
            break
        kept.append((np.asarray(vertices, dtype=np.int64), np.asarray(appearance, dtype=float)))
    if not kept:
        return FilteredComplex((), validated=True, arrays=())

    width = len(kept)
    sizes = [len(v) for v, _ in kept]
    total = sum(sizes)
    padded = np.full((total, width), -1, dtype=np.int64)
    dims = np.repeat(np.arange(width), sizes)
    values = np.concatenate([a for _, a in kept])
    offset = 0
    for d, (vertices, _) in enumerate(kept):
        padded[offset : offset + sizes[d], : d + 1] = vertices
        offset += sizes[d]

    # lexsort orders by its last key first
    keys = tuple(padded[:, k] for k in reversed(range(width))) + (dims, values)
    order = np.lexsort(keys)
    position = np.empty(total, dtype=np.int64)
    position[order] = np.arange(total, dtype=np.int64)

    flat: list[Simplex] = []
    tables = []
    offset = 0
    for d, (vertices, appearance) in enumerate(kept):
        where = position[offset : offset + sizes[d]]
        flat.extend(
            Simplex(tuple(row), a) for row, a in zip(vertices.tolist(), appearance.tolist(), strict=True)
        )
        rank = np.argsort(where, kind="stable")
        tables.append(SimplexTable(d, where[rank], vertices[rank], appearance[rank]))
        offset += sizes[d]

    ordered = tuple([flat[i] for i in order.tolist()])
    return FilteredComplex(ordered, validated=True, arrays=tuple(tables))


def skeleton(K: FilteredComplex, d: int) -> FilteredComplex:
    """All simplices of dimension at most ``d``."""
    if d < 0:
        raise ArgumentError(f"Skeleton dimension must be non-negative, got {d}")
    return FilteredComplex(tuple(s for s in K.simplices if s.dimension <= d), validated=K.validated)
