"""
Indicator tables and analysis reports.

These are the labeled-data counterparts of the purely numeric complex
types: row labels live here, never in the simplicial core.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any

from ..services.builders import PointCloud
from .barcode import Barcode, PersistenceInterval


@dataclass(frozen=True)
class IndicatorTable:
    """Labeled rows of numeric indicators; ``None`` marks a missing cell."""

    labels: tuple[str, ...]
    columns: tuple[str, ...]
    values: tuple[tuple[float | None, ...], ...]
    year: str | None = None

    def __len__(self) -> int:
        return len(self.labels)

    def is_complete(self) -> bool:
        return all(cell is not None for row in self.values for cell in row)


@dataclass(frozen=True, eq=False)
class DedupResult:
    """Unique points and, for each, the sorted labels of the rows it stands for."""

    unique_points: PointCloud
    groups: tuple[tuple[str, ...], ...]

    def label_of(self, point: int) -> str:
        """Lexicographically first label of a point's group."""
        return self.groups[point][0]

    @property
    def row_count(self) -> int:
        return sum(len(g) for g in self.groups)


@dataclass(frozen=True)
class CycleShape:
    """A reported 2-cycle and the polyhedron it resembles."""

    vertex_labels: tuple[tuple[str, ...], ...]
    vertices: tuple[int, ...]
    triangles: tuple[tuple[int, ...], ...]
    shape_name: str
    named: bool
    interval: PersistenceInterval | None = None

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict[str, Any]:
        interval = self.interval
        return {
            "shape_name": self.shape_name,
            "named": self.named,
            "vertex_count": self.vertex_count,
            "triangle_count": self.triangle_count,
            "vertices": list(self.vertices),
            "vertex_labels": [list(labels) for labels in self.vertex_labels],
            "triangles": [list(t) for t in self.triangles],
            "birth": interval.birth if interval else None,
            "death": None if interval is None or interval.is_infinite else interval.death,
            "persistence": None if interval is None or interval.is_infinite else interval.persistence,
        }


@dataclass(frozen=True)
class ComponentReport:
    """One connected component at the component parameter."""

    member_points: tuple[int, ...]
    representative_label: str
    representative_point: int
    homology_trivial: bool
    betti: tuple[int, ...]
    two_cycles: tuple[CycleShape, ...] = ()
    representative_coordinates: tuple[float, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "members": list(self.member_points),
            "representative": self.representative_label,
            "representative_point": self.representative_point,
            "representative_coordinates": list(self.representative_coordinates),
            "homology_trivial": self.homology_trivial,
            "betti": list(self.betti),
            "cycles": [c.to_dict() for c in self.two_cycles],
        }


@dataclass
class AnalysisReport:
    """Everything ``analyze`` produces, serializable to the JSON report."""

    parameters: dict[str, Any]
    unique_point_count: int
    groups: list[list[str]]
    components: list[ComponentReport]
    barcode: list[dict[str, Any]]
    betti: list[int] = field(default_factory=list)
    shared_faces: list[dict[str, Any]] = field(default_factory=list)
    persistence: Barcode = field(default_factory=Barcode, repr=False, compare=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "parameters": self.parameters,
            "unique_point_count": self.unique_point_count,
            "groups": self.groups,
            "components": [c.to_dict() for c in self.components],
            "shared_faces": self.shared_faces,
            "barcode": self.barcode,
        }

    def to_json(self) -> str:
        return json.dumps(_finite(self.to_dict()), indent=2, ensure_ascii=False) + "\n"


def _finite(value: Any) -> Any:
    """Replace infinities with None so the document stays strict JSON."""
    if isinstance(value, float) and math.isinf(value):
        return None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_finite(v) for v in value]
    return value
