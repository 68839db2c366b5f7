"""
Command Line Interface for concept-homology.

This module provides the analyze, betti, persistence and components
commands.
"""

from .main import cli, cli_main

__all__ = ["cli", "cli_main"]
