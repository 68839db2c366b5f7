"""
Integration tests running the whole pipeline on a fourteen-indicator table.
"""

import time

import numpy as np
import pytest

from concept_homology.core.config import Config
from concept_homology.models.report import IndicatorTable
from concept_homology.services.builders import PointCloud, rips_filtration
from concept_homology.services.persistence import compute_persistence
from concept_homology.services.pipeline import analyze, ingest_csv, stable_component_parameter
from oracle import count_components, count_distinct_rows

pytestmark = pytest.mark.integration


@pytest.fixture
def synthetic_table(fixtures_dir):
    return ingest_csv(fixtures_dir / "synthetic_14.csv")


class TestSyntheticTable:
    def test_rows_after_dropping_missing(self, synthetic_table):
        assert len(synthetic_table) == 14
        assert len(synthetic_table.columns) == 14
        assert "Molvania" not in synthetic_table.labels

    def test_unique_points(self, synthetic_table):
        report = analyze(synthetic_table, Config(at=1.5))
        assert report.unique_point_count == count_distinct_rows(list(synthetic_table.values)) == 10
        assert sum(len(group) for group in report.groups) == 14

    def test_components_at_fixed_parameter(self, synthetic_table):
        report = analyze(synthetic_table, Config(at=1.5))
        points = np.unique(np.array(synthetic_table.values), axis=0)
        assert len(report.components) == count_components(points, 1.5) == 4

    def test_components_at_auto_parameter(self, synthetic_table):
        report = analyze(synthetic_table, Config())
        points = np.unique(np.array(synthetic_table.values), axis=0)
        r_star = report.parameters["at"]
        assert report.parameters["at_auto"] is True
        assert len(report.components) == count_components(points, r_star + 1e-9) == 1

    def test_auto_parameter_is_last_merge(self, synthetic_table):
        points = np.unique(np.array(synthetic_table.values), axis=0)
        cloud = PointCloud(points)
        K = rips_filtration(cloud, r_max=100.0, max_dim=1)
        r_star = stable_component_parameter(compute_persistence(K, 0))
        assert analyze(synthetic_table, Config()).parameters["at"] == pytest.approx(r_star)

    def test_report_schema(self, synthetic_table):
        document = analyze(synthetic_table, Config(at=1.5, year="2007")).to_dict()
        assert set(document) == {
            "parameters",
            "unique_point_count",
            "groups",
            "components",
            "shared_faces",
            "barcode",
        }
        for component in document["components"]:
            assert set(component) == {
                "members",
                "representative",
                "representative_point",
                "representative_coordinates",
                "homology_trivial",
                "betti",
                "cycles",
            }
            assert component["representative_point"] in component["members"]
            assert len(component["representative_coordinates"]) == 14
        assert document["parameters"]["betti"][0] == 4

    def test_normalized_run(self, synthetic_table):
        report = analyze(synthetic_table, Config(normalize=True, at=0.5))
        assert report.unique_point_count == 10
        assert report.parameters["normalize"] is True


def _random_table(rng: np.random.Generator, rows: int) -> IndicatorTable:
    binary = rng.integers(0, 2, size=(rows, 7))
    scaled = rng.integers(1, 11, size=(rows, 7))
    values = np.hstack([binary, scaled]).astype(float)
    return IndicatorTable(
        labels=tuple(f"state{i:03d}" for i in range(rows)),
        columns=tuple(f"c{j}" for j in range(14)),
        values=tuple(tuple(row) for row in values.tolist()),
    )


@pytest.mark.slow
class TestRuntime:
    @pytest.mark.parametrize("rows", [88, 200])
    def test_analyze_random_table(self, rows):
        table = _random_table(np.random.default_rng(rows), rows)
        start = time.perf_counter()
        report = analyze(table, Config(max_dim=2))
        assert time.perf_counter() - start < 10.0
        assert report.unique_point_count == count_distinct_rows(list(table.values))
        assert report.parameters["betti"][0] == len(report.components)
