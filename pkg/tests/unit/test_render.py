"""
Unit tests for the text, SVG and JSON renderers.
"""

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from concept_homology.core.config import Config
from concept_homology.models.barcode import Barcode
from concept_homology.services.builders import PointCloud, rips_filtration
from concept_homology.services.error_handling import ArgumentError
from concept_homology.services.persistence import compute_persistence
from concept_homology.services.pipeline import analyze, ingest_csv
from concept_homology.services.render import (
    RenderSpec,
    emit_report_json,
    format_real,
    render_barcode_svg,
    render_barcode_text,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


class TestFormat:
    @pytest.mark.parametrize(
        "value,expected",
        [(0.0, "0.00000"), (1.0, "1.00000"), (2 ** 0.5, "1.41421"), (float("inf"), "inf")],
    )
    def test_six_significant_digits(self, value, expected):
        assert format_real(value) == expected


class TestText:
    def test_tetrahedron_golden(self, tetra_filtration, golden_dir):
        text = render_barcode_text(compute_persistence(tetra_filtration, 2))
        assert text == (golden_dir / "tetra_filtration.txt").read_text(encoding="utf-8")
        assert len(text.splitlines()) == 8

    def test_empty_barcode(self):
        assert render_barcode_text(Barcode()) == ""

    def test_square_loop_line(self):
        cloud = PointCloud(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
        B = compute_persistence(rips_filtration(cloud, r_max=2.0), 2)
        assert "dim 1: [1.00000, 1.41421)" in render_barcode_text(B).splitlines()


class TestSvg:
    def test_tetrahedron_golden(self, tetra_filtration, golden_dir):
        svg = render_barcode_svg(compute_persistence(tetra_filtration, 2), RenderSpec())
        assert svg == (golden_dir / "tetra_filtration.svg").read_text(encoding="utf-8")

    def test_well_formed_with_one_bar_per_visible_interval(self, tetra_filtration):
        B = compute_persistence(tetra_filtration, 2)
        root = ET.fromstring(render_barcode_svg(B).split("\n", 1)[1])
        bars = root.findall(f".//{SVG_NS}rect")
        panels = root.findall(f"{SVG_NS}g")
        assert len(bars) == len(render_barcode_text(B).splitlines()) == 8
        assert [p.get("data-degree") for p in panels] == ["0", "1", "2"]
        assert len(root.findall(f".//{SVG_NS}path")) == 2

    def test_bars_stay_inside_their_panel(self, tetra_filtration):
        root = ET.fromstring(render_barcode_svg(compute_persistence(tetra_filtration, 2)).split("\n", 1)[1])
        for panel in root.findall(f"{SVG_NS}g"):
            births = [float(r.get("data-birth")) for r in panel.findall(f"{SVG_NS}rect")]
            assert births == sorted(births)

    def test_no_arrows_without_marker(self, tetra_filtration):
        svg = render_barcode_svg(compute_persistence(tetra_filtration, 2), RenderSpec(infinite_marker=False))
        assert "arrow" not in svg.split("</style>")[1]

    def test_empty_barcode_draws_axis_only(self):
        svg = render_barcode_svg(Barcode())
        assert "<rect" not in svg
        assert 'class="axis"' in svg
        assert 'class="panel"' not in svg

    def test_deterministic(self, tetra_filtration):
        B = compute_persistence(tetra_filtration, 2)
        assert render_barcode_svg(B) == render_barcode_svg(B)

    @pytest.mark.parametrize("spec", [RenderSpec(width_px=0), RenderSpec(row_height_px=0)])
    def test_zero_size_canvas(self, spec):
        with pytest.raises(ArgumentError):
            render_barcode_svg(Barcode(), spec)

    def test_spec_from_config(self):
        spec = RenderSpec.from_config(Config().render)
        assert (spec.width_px, spec.row_height_px, spec.infinite_marker) == (640, 14, True)


class TestJson:
    def test_emit_writes_file(self, fixtures_dir, tmp_path):
        report = analyze(ingest_csv(fixtures_dir / "square.csv"), Config())
        target = tmp_path / "out" / "report.json"
        document = emit_report_json(report, target)
        assert target.read_text(encoding="utf-8") == document
        parsed = json.loads(document)
        assert parsed["unique_point_count"] == 4
        assert all(set(bar) == {"degree", "birth", "death"} for bar in parsed["barcode"])
