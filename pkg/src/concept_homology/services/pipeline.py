"""
Indicator-table pipeline.

Labeled CSV rows are collapsed into unique points, turned into a Rips
filtration, reduced to a barcode and summarised per connected component:
a medoid representative, a homology-trivial flag and the two-dimensional
cycles found inside the component, each named after the polyhedron it
resembles.
"""

from collections.abc import Iterable, Sequence
from itertools import combinations
from pathlib import Path

import numpy as np
import pandas as pd
from loguru import logger

from ..core.config import Config
from ..models.barcode import Barcode, PersistenceInterval
from ..models.complex import FilteredComplex, Simplex
from ..models.report import AnalysisReport, ComponentReport, CycleShape, DedupResult, IndicatorTable
from .builders import (
    DistanceMatrix,
    LandmarkSet,
    PointCloud,
    components_at,
    distance_matrix,
    max_pairwise_distance,
    witness_filtration,
)
from .error_handling import ArgumentError, DataError, MissingDataError, OperationTimer, ParseError
from .homology import betti_numbers, is_cycle
from .persistence import compute_persistence

MISSING_POLICIES = ("drop-row", "fail")

# (vertex count, triangle count) -> solid
SHAPE_NAMES = {
    (4, 4): "tetrahedron",
    (5, 6): "triangular bipyramid",
    (6, 8): "octahedron",
}


def _cell_value(cell: object, row: int, column: str) -> float | None:
    if not isinstance(cell, str) or not cell.strip():
        return None
    text = cell.strip()
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"Row {row}, column '{column}': '{text}' is not a number", row=row, column=column)
    if not np.isfinite(value):
        raise ParseError(f"Row {row}, column '{column}': '{text}' is not finite", row=row, column=column)
    return value


def ingest_csv(path: str | Path, missing_policy: str = "drop-row") -> IndicatorTable:
    """Read a labeled indicator table.

    The first column holds row labels and every other column must be
    numeric. An empty cell is missing: under ``drop-row`` the row is
    dropped and logged, under ``fail`` a MissingDataError names the cell.
    Row numbers in messages count data rows from 1.
    """
    if missing_policy not in MISSING_POLICIES:
        raise ArgumentError(
            f"Unknown missing policy '{missing_policy}'. Supported: {', '.join(MISSING_POLICIES)}"
        )
    file_path = Path(path)
    try:
        frame = pd.read_csv(file_path, dtype=str, keep_default_na=False, encoding="utf-8")
    except FileNotFoundError:
        raise DataError(f"Input file not found: {file_path}")
    except pd.errors.EmptyDataError:
        raise DataError(f"Input file {file_path} is empty; a header row is required")
    except (pd.errors.ParserError, UnicodeDecodeError, OSError) as e:
        raise DataError(f"Cannot read {file_path}: {e}")

    if frame.shape[1] == 0:
        raise DataError(f"Input file {file_path} has no columns")

    header = [str(name) for name in frame.columns]
    columns = tuple(header[1:])

    labels: list[str] = []
    values: list[tuple[float, ...]] = []
    for row, record in enumerate(frame.itertuples(index=False, name=None), start=1):
        label = record[0] if isinstance(record[0], str) else ""
        cells = [_cell_value(cell, row, column) for cell, column in zip(record[1:], columns, strict=True)]
        missing = [column for cell, column in zip(cells, columns, strict=True) if cell is None]
        if missing:
            if missing_policy == "fail":
                raise MissingDataError(
                    f"Row {row} ('{label}'): missing value in column '{missing[0]}'",
                    row=row,
                    column=missing[0],
                )
            logger.warning(f"Dropping row {row} ('{label}'): missing {', '.join(missing)}")
            continue
        labels.append(label)
        values.append(tuple(float(cell) for cell in cells if cell is not None))

    logger.info(f"Read {len(labels)} complete rows with {len(columns)} indicators from {file_path}")
    return IndicatorTable(tuple(labels), columns, tuple(values))


def dedup(table: IndicatorTable) -> DedupResult:
    """Collapse rows with bitwise identical value vectors into one point each."""
    if not table.is_complete():
        raise ArgumentError("Cannot deduplicate a table with missing cells")

    order: dict[bytes, int] = {}
    vectors: list[np.ndarray] = []
    members: list[list[str]] = []
    for label, row in zip(table.labels, table.values, strict=True):
        vector = np.asarray(row, dtype=float)
        key = vector.tobytes()
        position = order.get(key)
        if position is None:
            order[key] = len(vectors)
            vectors.append(vector)
            members.append([label])
        else:
            members[position].append(label)

    if vectors:
        points = PointCloud(np.vstack(vectors))
    else:
        points = PointCloud(np.zeros((0, len(table.columns))))
    groups = tuple(tuple(sorted(group)) for group in members)

    logger.info(f"{len(table)} rows collapse to {len(groups)} unique points")
    return DedupResult(points, groups)


def stable_component_parameter(B: Barcode) -> float:
    """Parameter just past the last merge of components; 0 when nothing merges."""
    deaths = [i.death for i in B.intervals if i.degree == 0 and not i.is_infinite]
    return max(deaths, default=0.0)


def _medoid(component: Iterable[int], D: DistanceMatrix, dedup_result: DedupResult) -> int:
    members = sorted(component)
    if not members:
        raise ArgumentError("Component must not be empty")
    block = D.entries[np.ix_(members, members)]
    sums = block.sum(axis=1)
    ranked = sorted(
        zip(sums.tolist(), members, strict=True),
        key=lambda pair: (pair[0], dedup_result.label_of(pair[1])),
    )
    return ranked[0][1]


def component_representative(
    component: Iterable[int], D: DistanceMatrix, dedup_result: DedupResult
) -> str:
    """Label of the medoid of a component.

    The medoid minimises the summed distance to the other members; ties go
    to the lexicographically smaller label.
    """
    return dedup_result.label_of(_medoid(component, D, dedup_result))


def homology_trivial(K: FilteredComplex, max_dim: int) -> bool:
    """True when beta_1 .. beta_max_dim all vanish.

    Necessary for contractibility, not sufficient.
    """
    return _trivial(betti_numbers(K, max_dim).to_list())


def alive_betti(
    B: Barcode, r: float, owner: dict[int, int], n_components: int
) -> tuple[list[int], list[list[int]]]:
    """Betti numbers of K_r, overall and per component, read off the barcode.

    ``owner`` maps each vertex to its component at ``r``. Classes alive at
    ``r`` are counted in the component of their birth simplex: the reduction
    of K_r never mixes columns of different components.
    """
    degrees = B.max_degree + 1
    total = [0] * degrees
    per_component = [[0] * degrees for _ in range(n_components)]
    for interval in B.intervals:
        if interval.alive_at(r):
            total[interval.degree] += 1
            per_component[owner[interval.birth_simplex.vertices[0]]][interval.degree] += 1
    return total, per_component


def _trivial(betti: Sequence[int]) -> bool:
    return all(b == 0 for b in betti[1:])


def name_shape(
    cycle: Sequence[Simplex],
    groups: Sequence[Sequence[str]] | None = None,
    interval: PersistenceInterval | None = None,
) -> CycleShape:
    """Describe a 2-cycle by its vertex and triangle counts."""
    triangles = sorted({s.vertices for s in cycle})
    if not triangles or any(len(t) != 3 for t in triangles):
        raise ArgumentError("Shape naming needs a non-empty chain of triangles")
    if not is_cycle(Simplex(t) for t in triangles):
        raise ArgumentError("Chain of triangles has a non-empty boundary")

    vertices = tuple(sorted({v for t in triangles for v in t}))
    key = (len(vertices), len(triangles))
    named = key in SHAPE_NAMES
    shape_name = SHAPE_NAMES[key] if named else f"irregular polyhedron with {len(triangles)} triangular faces"
    if groups is None:
        vertex_labels = tuple((f"v{v}",) for v in vertices)
    else:
        vertex_labels = tuple(tuple(groups[v]) for v in vertices)

    return CycleShape(
        vertex_labels=vertex_labels,
        vertices=vertices,
        triangles=tuple(triangles),
        shape_name=shape_name,
        named=named,
        interval=interval,
    )


def resolve_r_max(D: DistanceMatrix, r_max: float | None) -> float:
    """Configured r_max, or the largest pairwise distance (1.0 for a single location)."""
    if r_max is not None:
        return r_max
    value = max_pairwise_distance(D)
    resolved = value if value > 0 else 1.0
    logger.info(f"AUTO r_max resolved to {resolved:g}")
    return resolved


def prepare_points(table: IndicatorTable, config: Config) -> DedupResult:
    """Deduplicate and, when configured, min-max normalise the unique points."""
    result = dedup(table)
    if config.normalize:
        result = DedupResult(result.unique_points.normalized(), result.groups)
    return result


def point_filtration(
    points: PointCloud, config: Config
) -> tuple[FilteredComplex, DistanceMatrix, float]:
    """Filtration of unique points, on the configured landmarks or on all of them."""
    if config.landmarks:
        landmarks = LandmarkSet.of(config.landmarks)
    else:
        landmarks = LandmarkSet.all(len(points))
    D = distance_matrix(points, landmarks, config.metric)
    r_max = resolve_r_max(D, config.r_max)
    K = witness_filtration(D, r_max, max_dim=config.max_dim)
    return K, D, r_max


def _candidate_cycles(B: Barcode, r_star: float, min_persistence: float) -> list[PersistenceInterval]:
    return [
        interval
        for interval in B.in_degree(2)
        if interval.alive_at(r_star)
        or (not interval.is_infinite and interval.persistence > min_persistence)
    ]


def _shared_faces(shapes: list[CycleShape]) -> list[dict]:
    shared = []
    for (a, first), (b, second) in combinations(enumerate(shapes), 2):
        common = sorted(set(first.triangles) & set(second.triangles))
        if common:
            shared.append({"cycles": [a, b], "faces": [list(t) for t in common]})
    return shared


def _parameters(
    config: Config,
    table: IndicatorTable,
    r_max: float | None,
    r_star: float | None,
    betti: list[int],
) -> dict:
    return {
        "metric": config.metric,
        "max_dim": config.max_dim,
        "r_max": r_max,
        "r_max_auto": config.r_max is None,
        "at": r_star,
        "at_auto": config.at is None,
        "normalize": config.normalize,
        "missing_policy": config.missing_policy,
        "min_persistence": config.min_persistence,
        "year": config.year or table.year,
        "rows": len(table),
        "betti": betti,
    }


def analyze(table: IndicatorTable, config: Config) -> AnalysisReport:
    """Run the whole pipeline on a complete indicator table."""
    if config.landmarks:
        logger.info("Landmarks are ignored by analyze; every unique point is a vertex")

    with OperationTimer("dedup", "pipeline", rows=len(table)):
        points = prepare_points(table, config)
    n = len(points.unique_points)
    if n == 0:
        logger.info("Empty table, nothing to analyze")
        parameters = _parameters(config, table, config.r_max, config.at, [])
        return AnalysisReport(parameters, 0, [], [], [])

    with OperationTimer("filtration", "pipeline", points=n):
        D = distance_matrix(points.unique_points, LandmarkSet.all(n), config.metric)
        r_max = resolve_r_max(D, config.r_max)
        K = witness_filtration(D, r_max, max_dim=config.max_dim)

    with OperationTimer("persistence", "pipeline", simplices=len(K)):
        B = compute_persistence(K, config.max_dim)

    if config.at is None:
        r_star = stable_component_parameter(B)
        logger.info(f"AUTO component parameter resolved to {r_star:g}")
    else:
        r_star = config.at

    components = components_at(K, r_star)
    owner = {v: c for c, component in enumerate(components) for v in component}
    betti, betti_by_component = alive_betti(B, r_star, owner, len(components))
    cycles: dict[int, list[CycleShape]] = {c: [] for c in range(len(components))}
    if config.max_dim >= 2:
        for interval in _candidate_cycles(B, r_star, config.min_persistence):
            shape = name_shape(interval.representative, points.groups, interval)
            homes = {owner.get(v) for v in shape.vertices}
            if len(homes) != 1 or None in homes:
                logger.info(
                    f"Dropping 2-cycle born at {interval.birth:g}: "
                    f"vertices {list(shape.vertices)} span several components at {r_star:g}"
                )
                continue
            cycles[homes.pop()].append(shape)

    reports = []
    with OperationTimer("components", "pipeline", components=len(components)):
        for c, component in enumerate(components):
            component_betti = betti_by_component[c]
            trivial = _trivial(component_betti)
            shapes = cycles[c]
            if trivial and shapes:
                logger.info(
                    f"Component {c} is homology-trivial at {r_star:g}; "
                    f"dropping {len(shapes)} 2-cycle(s) already filled in"
                )
                shapes = []
            medoid = _medoid(component, D, points)
            logger.info(
                f"Component {c}: {len(component)} point(s), medoid representative "
                f"'{points.label_of(medoid)}'"
            )
            reports.append(
                ComponentReport(
                    member_points=tuple(sorted(component)),
                    representative_label=points.label_of(medoid),
                    representative_point=medoid,
                    homology_trivial=trivial,
                    betti=tuple(component_betti),
                    two_cycles=tuple(shapes),
                    representative_coordinates=tuple(points.unique_points.points[medoid].tolist()),
                )
            )

    shapes = [shape for report in reports for shape in report.two_cycles]
    return AnalysisReport(
        parameters=_parameters(config, table, r_max, r_star, betti),
        unique_point_count=n,
        groups=[list(group) for group in points.groups],
        components=reports,
        barcode=B.to_list(),
        betti=betti,
        shared_faces=_shared_faces(shapes),
        persistence=B,
    )
