"""
Configuration management for concept-homology.

This module handles loading analysis parameters from YAML files and
environment variables. ``None`` stands for AUTO wherever a parameter can
be derived from the data.
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml
from loguru import logger

from ..services.error_handling import ConfigurationError

METRICS = ["euclidean", "manhattan", "hamming"]
MISSING_POLICIES = ["drop-row", "fail"]
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
LOG_ENV = "CONCEPT_HOMOLOGY_LOG"

# Values accepted by CONCEPT_HOMOLOGY_LOG
ENV_LOG_LEVELS = {"error": "ERROR", "warn": "WARNING", "info": "INFO", "debug": "DEBUG"}


def parse_auto(value: Any) -> float | None:
    """Turn 'AUTO' (any case) or None into None, anything else into a float."""
    if value is None:
        return None
    if isinstance(value, str):
        if value.strip().upper() == "AUTO":
            return None
        try:
            return float(value)
        except ValueError:
            raise ConfigurationError(f"Expected AUTO or a number, got '{value}'")
    return float(value)


def _truthy(value: str) -> bool:
    return value.lower() in ["true", "1", "yes", "on"]


@dataclass
class Config:
    """Analysis and rendering configuration."""

    metric: str = "euclidean"
    max_dim: int = 2
    r_max: float | None = None
    at: float | None = None
    normalize: bool = False
    missing_policy: str = "drop-row"
    min_persistence: float = 0.0
    year: str | None = None
    landmarks: list[int] | None = None

    # Logging - all logging config is under log field
    log: dict[str, Any] = field(
        default_factory=lambda: {
            "level": "WARNING",
            "file": None,
            "rotation": "10 MB",
            "retention": "5 days",
            "format": "<level>{level: <8}</level> <green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> - <cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>",
        }
    )

    render: dict[str, Any] = field(
        default_factory=lambda: {
            "width_px": 640,
            "row_height_px": 14,
            "infinite_marker": True,
        }
    )

    def __post_init__(self):
        self.r_max = parse_auto(self.r_max)
        self.at = parse_auto(self.at)
        if self.year is not None:
            self.year = str(self.year)

    @classmethod
    def from_file(cls, config_path: str) -> "Config":
        """Load configuration from YAML file."""
        config_file = Path(config_path)
        if not config_file.exists():
            return cls()

        with open(config_file, encoding="utf-8") as f:
            config_data = yaml.safe_load(f) or {}

        defaults = cls()
        for section in ("log", "render"):
            if section in config_data:
                merged = dict(getattr(defaults, section))
                merged.update(config_data[section] or {})
                config_data[section] = merged

        try:
            return cls(**config_data)
        except TypeError as e:
            raise ConfigurationError(f"Invalid configuration file {config_path}: {e}")

    @classmethod
    def from_env(cls) -> "Config":
        """Load configuration from environment variables."""
        config = cls()
        config.apply_env()
        return config

    def apply_env(self) -> None:
        """Override fields with CONCEPT_HOMOLOGY_* environment variables."""
        try:
            self._apply_env()
        except ValueError as e:
            raise ConfigurationError(f"Invalid environment override: {e}")

    def _apply_env(self) -> None:
        if os.getenv("CONCEPT_HOMOLOGY_METRIC"):
            self.metric = os.getenv("CONCEPT_HOMOLOGY_METRIC")
        if os.getenv("CONCEPT_HOMOLOGY_MAX_DIM"):
            self.max_dim = int(os.getenv("CONCEPT_HOMOLOGY_MAX_DIM"))
        if os.getenv("CONCEPT_HOMOLOGY_R_MAX"):
            self.r_max = parse_auto(os.getenv("CONCEPT_HOMOLOGY_R_MAX"))
        if os.getenv("CONCEPT_HOMOLOGY_AT"):
            self.at = parse_auto(os.getenv("CONCEPT_HOMOLOGY_AT"))
        if os.getenv("CONCEPT_HOMOLOGY_NORMALIZE"):
            self.normalize = _truthy(os.getenv("CONCEPT_HOMOLOGY_NORMALIZE"))
        if os.getenv("CONCEPT_HOMOLOGY_MISSING"):
            self.missing_policy = os.getenv("CONCEPT_HOMOLOGY_MISSING")
        if os.getenv("CONCEPT_HOMOLOGY_MIN_PERSISTENCE"):
            self.min_persistence = float(os.getenv("CONCEPT_HOMOLOGY_MIN_PERSISTENCE"))
        env_level = os.getenv(LOG_ENV)
        if env_level:
            self.log["level"] = resolve_log_level(env_level)

    def to_dict(self) -> dict[str, Any]:
        """Convert configuration to dictionary."""
        return {
            "metric": self.metric,
            "max_dim": self.max_dim,
            "r_max": "AUTO" if self.r_max is None else self.r_max,
            "at": "AUTO" if self.at is None else self.at,
            "normalize": self.normalize,
            "missing_policy": self.missing_policy,
            "min_persistence": self.min_persistence,
            "year": self.year,
            "landmarks": self.landmarks,
            "log": self.log,
            "render": self.render,
        }

    def save_to_file(self, config_path: str):
        """Save configuration to YAML file."""
        config_file = Path(config_path)
        config_file.parent.mkdir(parents=True, exist_ok=True)

        with open(config_file, "w", encoding="utf-8") as f:
            yaml.safe_dump(self.to_dict(), f, default_flow_style=False, sort_keys=False)

    def validate(self) -> bool:
        """Validate configuration values."""
        errors = []

        if self.metric not in METRICS:
            errors.append(f"metric must be one of: {', '.join(METRICS)}")
        if not isinstance(self.max_dim, int) or self.max_dim < 0:
            errors.append("max_dim must be a non-negative integer")
        if self.r_max is not None and not self.r_max > 0:
            errors.append("r_max must be positive or AUTO")
        if self.at is not None and self.at < 0:
            errors.append("at must be non-negative or AUTO")
        if self.missing_policy not in MISSING_POLICIES:
            errors.append(f"missing_policy must be one of: {', '.join(MISSING_POLICIES)}")
        if self.min_persistence < 0:
            errors.append("min_persistence must be non-negative")
        if self.landmarks is not None and (
            not self.landmarks or any(int(i) < 0 for i in self.landmarks)
        ):
            errors.append("landmarks must be a non-empty list of non-negative indices")

        if str(self.log.get("level", "")).upper() not in LOG_LEVELS:
            errors.append(f"log.level must be one of: {', '.join(LOG_LEVELS)}")

        for key in ("width_px", "row_height_px"):
            value = self.render.get(key)
            if not isinstance(value, int) or value <= 0:
                errors.append(f"render.{key} must be a positive integer")

        if errors:
            raise ConfigurationError(f"Configuration validation failed: {'; '.join(errors)}")

        return True


def resolve_log_level(value: str | None, default: str = "WARNING") -> str:
    """Map error/warn/info/debug (or a loguru level name) to a level name."""
    if not value:
        return default
    lowered = value.strip().lower()
    if lowered in ENV_LOG_LEVELS:
        return ENV_LOG_LEVELS[lowered]
    if lowered.upper() in LOG_LEVELS:
        return lowered.upper()
    logger.warning(f"Unknown log level '{value}', using {default}")
    return default


class ConfigManager:
    """Manages application configuration."""

    def __init__(self, config_path: str | None = None):
        """Initialize config manager."""
        self.config_path = config_path or "./config/config.yaml"
        self._config: Config | None = None

    def load_config(self) -> Config:
        """Load configuration from file and environment."""
        if self._config is None:
            config = Config.from_file(self.config_path)
            config.apply_env()
            config.validate()
            self._config = config

        return self._config

    def update_config(self, updates: dict[str, Any]) -> Config:
        """Update configuration with new values; None values are ignored."""
        config = self.load_config()

        for key, value in updates.items():
            if value is not None and hasattr(config, key):
                if key in ("r_max", "at"):
                    value = parse_auto(value)
                setattr(config, key, value)

        config.validate()
        self._config = config
        return config
