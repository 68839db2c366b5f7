"""
Unit tests for the loguru setup.
"""

import logging

from loguru import logger

from concept_homology.utils.custom_logging import CustomizeLogger


def _config(**overrides):
    config = {"level": "INFO", "file": None, "format": "{level}|{message}"}
    config.update(overrides)
    return config


class TestCustomizeLogger:
    def test_stderr_sink_only(self, capsys):
        CustomizeLogger.make_logger(_config())
        logger.info("to stderr")
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "INFO|to stderr" in captured.err

    def test_level_filters(self, capsys):
        CustomizeLogger.make_logger(_config(level="WARNING"))
        logger.info("hidden")
        logger.warning("shown")
        err = capsys.readouterr().err
        assert "hidden" not in err
        assert "shown" in err

    def test_environment_overrides_level(self, capsys, monkeypatch):
        monkeypatch.setenv("CONCEPT_HOMOLOGY_LOG", "error")
        CustomizeLogger.make_logger(_config(level="DEBUG"))
        logger.warning("quiet")
        logger.error("loud")
        err = capsys.readouterr().err
        assert "quiet" not in err
        assert "loud" in err

    def test_file_sink(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        CustomizeLogger.make_logger(_config(file="logs/run.log"))
        logger.info("persisted")
        logger.complete()
        logger.remove()
        assert "persisted" in (tmp_path / "logs" / "run.log").read_text(encoding="utf-8")

    def test_stdlib_records_are_intercepted(self, capsys):
        CustomizeLogger.make_logger(_config())
        logging.getLogger("scipy.test").warning("from stdlib")
        assert "WARNING|from stdlib" in capsys.readouterr().err

    def test_make_logger_returns_nothing(self, capsys):
        assert CustomizeLogger.make_logger(_config()) is None
        logger.info("still routed")
        assert "INFO|still routed" in capsys.readouterr().err
