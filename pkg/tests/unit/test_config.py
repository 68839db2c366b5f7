"""
Unit tests for configuration loading and validation.
"""

from pathlib import Path

import pytest
import yaml

from concept_homology.core.config import Config, ConfigManager, parse_auto, resolve_log_level
from concept_homology.services.error_handling import ConfigurationError


class TestParseAuto:
    @pytest.mark.parametrize("value", ["AUTO", "auto", " Auto ", None])
    def test_auto(self, value):
        assert parse_auto(value) is None

    def test_numbers(self):
        assert parse_auto("2.5") == 2.5
        assert parse_auto(3) == 3.0

    def test_garbage(self):
        with pytest.raises(ConfigurationError):
            parse_auto("soon")


class TestConfigFile:
    def test_defaults_when_file_missing(self, tmp_path):
        config = Config.from_file(str(tmp_path / "none.yaml"))
        assert config.metric == "euclidean"
        assert config.max_dim == 2
        assert config.r_max is None and config.at is None
        assert config.render["width_px"] == 640

    def test_load_and_merge_sections(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text(
            "metric: hamming\nr_max: 4\nat: AUTO\nyear: 2007\nlog:\n  level: DEBUG\nrender:\n  width_px: 800\n",
            encoding="utf-8",
        )
        config = Config.from_file(str(path))
        assert config.metric == "hamming"
        assert config.r_max == 4.0
        assert config.at is None
        assert config.year == "2007"
        assert config.log["level"] == "DEBUG"
        assert config.log["rotation"] == "10 MB"
        assert config.render == {"width_px": 800, "row_height_px": 14, "infinite_marker": True}

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("colour: blue\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            Config.from_file(str(path))

    def test_save_round_trip(self, tmp_path):
        path = tmp_path / "nested" / "config.yaml"
        Config(metric="manhattan", r_max=3.0).save_to_file(str(path))
        saved = yaml.safe_load(path.read_text(encoding="utf-8"))
        assert saved["at"] == "AUTO"
        reloaded = Config.from_file(str(path))
        assert reloaded.metric == "manhattan"
        assert reloaded.r_max == 3.0

    def test_shipped_config_is_valid(self):
        shipped = Path(__file__).resolve().parents[2] / "config" / "config.yaml"
        config = Config.from_file(str(shipped))
        assert config.validate()
        assert config.r_max is None


class TestEnvironment:
    def test_overrides(self, monkeypatch):
        monkeypatch.setenv("CONCEPT_HOMOLOGY_METRIC", "manhattan")
        monkeypatch.setenv("CONCEPT_HOMOLOGY_MAX_DIM", "3")
        monkeypatch.setenv("CONCEPT_HOMOLOGY_R_MAX", "2.5")
        monkeypatch.setenv("CONCEPT_HOMOLOGY_NORMALIZE", "yes")
        monkeypatch.setenv("CONCEPT_HOMOLOGY_LOG", "debug")
        config = Config.from_env()
        assert config.metric == "manhattan"
        assert config.max_dim == 3
        assert config.r_max == 2.5
        assert config.normalize is True
        assert config.log["level"] == "DEBUG"

    def test_bad_integer(self, monkeypatch):
        monkeypatch.setenv("CONCEPT_HOMOLOGY_MAX_DIM", "two")
        with pytest.raises(ConfigurationError):
            Config.from_env()


class TestValidate:
    def test_aggregates_problems(self):
        config = Config(metric="cosine", max_dim=-1, missing_policy="guess")
        with pytest.raises(ConfigurationError) as info:
            config.validate()
        message = str(info.value)
        assert "metric" in message and "max_dim" in message and "missing_policy" in message

    def test_render_sizes(self):
        config = Config()
        config.render["row_height_px"] = 0
        with pytest.raises(ConfigurationError, match="row_height_px"):
            config.validate()

    def test_non_positive_r_max(self):
        with pytest.raises(ConfigurationError, match="r_max"):
            Config(r_max=0).validate()


class TestLogLevel:
    @pytest.mark.parametrize(
        "value,expected",
        [("error", "ERROR"), ("warn", "WARNING"), ("INFO", "INFO"), ("debug", "DEBUG"), ("loud", "WARNING"), (None, "WARNING")],
    )
    def test_resolve(self, value, expected):
        assert resolve_log_level(value) == expected


class TestConfigManager:
    def test_update_skips_none_and_parses_auto(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("r_max: 5\n", encoding="utf-8")
        manager = ConfigManager(str(path))
        config = manager.update_config({"metric": None, "r_max": "AUTO", "at": "0.5"})
        assert config.metric == "euclidean"
        assert config.r_max is None
        assert config.at == 0.5

    def test_update_validates(self, tmp_path):
        manager = ConfigManager(str(tmp_path / "none.yaml"))
        with pytest.raises(ConfigurationError):
            manager.update_config({"max_dim": -2})

    def test_environment_beats_file(self, tmp_path, monkeypatch):
        path = tmp_path / "config.yaml"
        path.write_text("metric: hamming\n", encoding="utf-8")
        monkeypatch.setenv("CONCEPT_HOMOLOGY_METRIC", "manhattan")
        assert ConfigManager(str(path)).load_config().metric == "manhattan"
