"""
Domain types for concept-homology.

Simplices, filtered complexes and barcodes. Report types for labeled
indicator tables live in :mod:`concept_homology.models.report`.
"""

from .barcode import Barcode, PersistenceInterval
from .complex import (
    FilteredComplex,
    Simplex,
    SimplexTable,
    assemble_complex,
    build_complex,
    faces,
    skeleton,
)

__all__ = [
    "Barcode",
    "FilteredComplex",
    "PersistenceInterval",
    "Simplex",
    "SimplexTable",
    "assemble_complex",
    "build_complex",
    "faces",
    "skeleton",
]
