"""
Unit tests for the explicit filtration reader.
"""

import pytest

from concept_homology.services.error_handling import DataError, ParseError, StructuralError
from concept_homology.services.filtration_io import (
    looks_like_filtration,
    parse_filtration_line,
    read_filtration_csv,
)


class TestParseLine:
    def test_prefixed_and_bare_vertices(self):
        assert parse_filtration_line("v2 v0 v1, 2.5").vertices == (0, 1, 2)
        assert parse_filtration_line("3 1, 4").vertices == (1, 3)

    def test_comments_and_blank_lines(self):
        assert parse_filtration_line("# comment") is None
        assert parse_filtration_line("   ") is None

    @pytest.mark.parametrize("line", ["v0 v1", "vx, 1", ", 2", "v0, nan", "v0, abc"])
    def test_rejects_malformed(self, line):
        with pytest.raises(ValueError):
            parse_filtration_line(line)


class TestReadFiltration:
    def test_reads_fixture(self, fixtures_dir):
        K = read_filtration_csv(fixtures_dir / "tetra_filtration.csv")
        assert K.counts() == [4, 6, 4]
        assert K.appearance_of((1, 2, 3)) == 5.0

    def test_closure_fills_missing_faces(self, tmp_path):
        path = tmp_path / "triangle.csv"
        path.write_text("v0 v1 v2, 1\n", encoding="utf-8")
        assert read_filtration_csv(path).counts() == [3, 3, 1]

    def test_parse_error_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("v0, 0\nv1 oops, 1\n", encoding="utf-8")
        with pytest.raises(ParseError) as info:
            read_filtration_csv(path)
        assert info.value.row == 2

    def test_duplicate_vertex_is_structural(self, tmp_path):
        path = tmp_path / "dup.csv"
        path.write_text("v0 v0, 1\n", encoding="utf-8")
        with pytest.raises(StructuralError):
            read_filtration_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_filtration_csv(tmp_path / "absent.csv")


class TestDetection:
    def test_filtration_fixture_detected(self, fixtures_dir):
        assert looks_like_filtration(fixtures_dir / "tetra_filtration.csv")

    def test_indicator_table_not_detected(self, fixtures_dir):
        assert not looks_like_filtration(fixtures_dir / "square.csv")

    def test_missing_file_not_detected(self, tmp_path):
        assert not looks_like_filtration(tmp_path / "absent.csv")
