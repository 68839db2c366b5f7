"""
concept-homology - persistent homology of labeled indicator data.

This package builds Rips and witness filtrations from point clouds,
computes barcodes over the two-element field and reports the connected
components and two-dimensional cycles of indicator tables.
"""

__version__ = "0.1.0"

from .core.config import Config

__all__ = [
    "Config",
]
