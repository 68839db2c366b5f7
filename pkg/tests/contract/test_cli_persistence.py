"""
Contract tests for the persistence command.
"""

import pytest

pytestmark = pytest.mark.contract


class TestCLIPersistenceContract:
    def test_text_barcode_matches_golden(self, run_cli, fixtures_dir, golden_dir):
        code, out, _ = run_cli("persistence", fixtures_dir / "tetra_filtration.csv")
        assert code == 0
        assert out == (golden_dir / "tetra_filtration.txt").read_text(encoding="utf-8")

    def test_svg_matches_golden(self, run_cli, fixtures_dir, golden_dir, tmp_path):
        target = tmp_path / "plots" / "bars.svg"
        code, _, _ = run_cli("persistence", fixtures_dir / "tetra_filtration.csv", "--svg", target)
        assert code == 0
        assert target.read_text(encoding="utf-8") == (golden_dir / "tetra_filtration.svg").read_text(
            encoding="utf-8"
        )

    def test_forced_indicator_kind(self, run_cli, fixtures_dir):
        code, out, _ = run_cli("persistence", fixtures_dir / "square.csv", "--input-kind", "indicator")
        assert code == 0
        assert "dim 1: [1.00000, 1.41421)" in out.splitlines()

    def test_landmark_subset(self, run_cli, fixtures_dir):
        code, out, _ = run_cli("persistence", fixtures_dir / "square.csv", "--landmarks", "0,2")
        assert code == 0
        assert [line for line in out.splitlines() if line.startswith("dim 0")][-1] == "dim 0: [0.00000, inf)"

    def test_bad_landmarks_are_a_usage_error(self, run_cli, fixtures_dir):
        code, _, err = run_cli("persistence", fixtures_dir / "square.csv", "--landmarks", "a,b")
        assert code == 1
        assert "landmark" in err.lower() or "comma-separated" in err

    def test_repeated_runs_are_identical(self, run_cli, fixtures_dir):
        first_code, first_out, _ = run_cli("persistence", fixtures_dir / "synthetic_14.csv")
        second_code, second_out, _ = run_cli("persistence", fixtures_dir / "synthetic_14.csv")
        assert first_code == second_code == 0
        assert first_out == second_out
