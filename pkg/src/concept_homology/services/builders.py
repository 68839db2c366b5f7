"""
Filtered complexes built from point data.

Covers landmark-to-point distance matrices, the witness complex with
times of appearance, its Rips specialization when every point is a
landmark, and connected components of a filtration at a parameter.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
from loguru import logger
from scipy.spatial.distance import cdist

from ..models.complex import FilteredComplex, assemble_complex
from ..utils.union_find import UnionFind
from .error_handling import ArgumentError, OperationTimer

METRICS = ("euclidean", "manhattan", "hamming")


class WitnessPool(Enum):
    """Which data points may witness a simplex."""

    AUTO = "auto"
    ALL = "all"
    SELF = "self"


class WitnessRule(Enum):
    """How simplices of dimension two and up enter the complex."""

    FLAG = "flag"
    STRICT = "strict"


@dataclass(frozen=True, eq=False)
class PointCloud:
    """N points of a common dimension d."""

    points: np.ndarray

    def __post_init__(self):
        array = np.asarray(self.points, dtype=float)
        if array.ndim == 1 and array.size == 0:
            array = array.reshape(0, 0)
        if array.ndim != 2:
            raise ArgumentError(f"Point cloud must be two-dimensional, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ArgumentError("Point cloud contains non-finite coordinates")
        object.__setattr__(self, "points", array)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]], dim: int | None = None) -> "PointCloud":
        if not rows:
            return cls(np.zeros((0, dim or 0)))
        return cls(np.asarray(rows, dtype=float))

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def normalized(self) -> "PointCloud":
        """Per-column min-max scaling to [0, 1]; constant columns map to 0."""
        if len(self) == 0:
            return self
        low = self.points.min(axis=0)
        span = self.points.max(axis=0) - low
        safe = np.where(span > 0, span, 1.0)
        return PointCloud(np.where(span > 0, (self.points - low) / safe, 0.0))


@dataclass(frozen=True)
class LandmarkSet:
    """Strictly increasing indices of the landmark points."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if not self.indices:
            raise ArgumentError("Landmark set must not be empty")
        if any(i < 0 for i in self.indices):
            raise ArgumentError("Landmark indices must be non-negative")
        if any(a >= b for a, b in zip(self.indices, self.indices[1:], strict=False)):
            raise ArgumentError("Landmark indices must be strictly increasing")

    @classmethod
    def all(cls, n_points: int) -> "LandmarkSet":
        return cls(tuple(range(n_points)))

    @classmethod
    def of(cls, indices: Sequence[int]) -> "LandmarkSet":
        return cls(tuple(sorted(set(int(i) for i in indices))))

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """n x N distances from each landmark to each data point."""

    entries: np.ndarray
    metric_name: str
    landmark_indices: tuple[int, ...]

    @property
    def n_landmarks(self) -> int:
        return int(self.entries.shape[0])

    @property
    def n_points(self) -> int:
        return int(self.entries.shape[1])

    def covers_cloud(self) -> bool:
        """True when every data point is a landmark (L = Z)."""
        return self.landmark_indices == tuple(range(self.n_points))


def distance_matrix(Z: PointCloud, L: LandmarkSet, metric: str = "euclidean") -> DistanceMatrix:
    """Distances between landmark a and point i for every pair."""
    if metric not in METRICS:
        raise ArgumentError(f"Unknown metric '{metric}'. Supported metrics: {', '.join(METRICS)}")
    if L.indices[-1] >= len(Z):
        raise ArgumentError(
            f"Landmark index {L.indices[-1]} outside a cloud of {len(Z)} points"
        )

    landmarks = Z.points[list(L.indices)]
    if metric == "euclidean":
        entries = cdist(landmarks, Z.points, "euclidean")
    elif metric == "manhattan":
        entries = cdist(landmarks, Z.points, "cityblock")
    else:
        # count of differing coordinates, not scipy's fraction
        entries = (landmarks[:, None, :] != Z.points[None, :, :]).sum(axis=2).astype(float)

    return DistanceMatrix(np.asarray(entries, dtype=float), metric, L.indices)


def _edge_appearances(D: DistanceMatrix, pool: WitnessPool) -> np.ndarray:
    n = D.n_landmarks
    if pool is WitnessPool.SELF:
        own = D.entries[:, list(D.landmark_indices)]
        return np.maximum(own, own.T)

    edges = np.empty((n, n))
    for a in range(n):
        edges[a] = np.maximum(D.entries[a][None, :], D.entries).min(axis=1)
    return edges


def _strict_appearances(D: DistanceMatrix, extended: np.ndarray, block: int = 1024) -> np.ndarray:
    """Smallest R with one point within R of every vertex, per row."""
    out = np.empty(len(extended))
    for start in range(0, len(extended), block):
        rows = extended[start : start + block]
        out[start : start + block] = D.entries[rows].max(axis=1).min(axis=1)
    return out


def _cofaces(
    vertices: np.ndarray,
    values: np.ndarray,
    adjacency: np.ndarray,
    edges: np.ndarray,
    D: DistanceMatrix,
    r_max: float,
    rule: WitnessRule,
    block: int = 2048,
) -> tuple[np.ndarray, np.ndarray]:
    """Extend every simplex of a layer by each common neighbour above its last vertex."""
    n = adjacency.shape[0]
    width = vertices.shape[1]
    columns = np.arange(n)
    grown_vertices: list[np.ndarray] = []
    grown_values: list[np.ndarray] = []
    for start in range(0, len(vertices), block):
        chunk = vertices[start : start + block]
        common = adjacency[chunk[:, 0]]
        for k in range(1, width):
            common &= adjacency[chunk[:, k]]
        common &= columns[None, :] > chunk[:, -1:]
        rows, extra = np.nonzero(common)
        extended = np.concatenate([chunk[rows], extra[:, None]], axis=1)
        if rule is WitnessRule.STRICT:
            appearance = _strict_appearances(D, extended)
            keep = appearance <= r_max
            extended, appearance = extended[keep], appearance[keep]
        else:
            appearance = values[start + rows]
            for k in range(width):
                appearance = np.maximum(appearance, edges[extended[:, k], extra])
        grown_vertices.append(extended)
        grown_values.append(appearance)
    if not grown_vertices:
        return np.zeros((0, width + 1), dtype=np.int64), np.zeros(0)
    return np.concatenate(grown_vertices), np.concatenate(grown_values)


def witness_filtration(
    D: DistanceMatrix,
    r_max: float,
    max_dim: int = 2,
    pool: WitnessPool = WitnessPool.AUTO,
    rule: WitnessRule = WitnessRule.FLAG,
) -> FilteredComplex:
    """Witness complex W(D, R) for all R up to ``r_max``.

    Vertices appear at 0. An edge appears at the smallest R with a witness
    for it. Under the flag rule a higher simplex appears once all its edges
    have; under the strict rule it needs a single common witness.
    """
    if D.n_landmarks == 0:
        raise ArgumentError("Witness complex needs at least one landmark")
    if not r_max > 0:
        raise ArgumentError(f"r_max must be positive, got {r_max}")
    if max_dim < 0:
        raise ArgumentError(f"max_dim must be non-negative, got {max_dim}")

    if rule is WitnessRule.STRICT:
        if pool is WitnessPool.SELF:
            raise ArgumentError("The strict witness rule needs the full witness pool")
        pool = WitnessPool.ALL
    elif pool is WitnessPool.AUTO:
        pool = WitnessPool.SELF if D.covers_cloud() else WitnessPool.ALL

    with OperationTimer("witness_filtration", "builders", landmarks=D.n_landmarks, pool=pool.value):
        edges = _edge_appearances(D, pool)
        n = D.n_landmarks
        layers = [(np.arange(n, dtype=np.int64)[:, None], np.zeros(n))]

        if max_dim >= 1:
            a, b = np.triu_indices(n, k=1)
            values = edges[a, b]
            keep = values <= r_max
            a, b = a[keep], b[keep]
            layers.append((np.stack([a, b], axis=1).astype(np.int64), values[keep]))
            adjacency = np.zeros((n, n), dtype=bool)
            adjacency[a, b] = True
            adjacency[b, a] = True

            for _ in range(2, max_dim + 1):
                vertices, values = layers[-1]
                if len(vertices) == 0:
                    break
                layers.append(_cofaces(vertices, values, adjacency, edges, D, r_max, rule))

        K = assemble_complex(layers)

    logger.info(f"Witness filtration on {n} landmarks: simplices per dimension {K.counts()}")
    return K


def rips_filtration(
    Z: PointCloud, r_max: float, max_dim: int = 2, metric: str = "euclidean"
) -> FilteredComplex:
    """Rips filtration: the witness complex with every point a landmark."""
    if len(Z) == 0:
        raise ArgumentError("Rips filtration needs at least one point")
    return witness_filtration(distance_matrix(Z, LandmarkSet.all(len(Z)), metric), r_max, max_dim)


def components_at(K: FilteredComplex, r: float) -> list[frozenset[int]]:
    """Connected components of the 1-skeleton of K_r, by smallest vertex."""
    if r < 0:
        raise ArgumentError(f"Parameter must be non-negative, got {r}")
    vertices, edges = K.table(0), K.table(1)
    forest = UnionFind(vertices.vertices[vertices.appearance <= r, 0].tolist())
    for a, b in edges.vertices[edges.appearance <= r].tolist():
        forest.join(a, b)
    return forest.groups()


def max_pairwise_distance(D: DistanceMatrix) -> float:
    if D.entries.size == 0:
        return 0.0
    value = float(D.entries.max())
    return value if math.isfinite(value) else 0.0
