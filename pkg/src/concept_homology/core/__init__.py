"""
Core configuration for concept-homology.
"""

from .config import Config, ConfigManager

__all__ = [
    "Config",
    "ConfigManager",
]
