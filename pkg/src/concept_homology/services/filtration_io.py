"""
Reader for explicit filtrations.

One simplex per line, vertices separated by whitespace, then a comma and
the time of appearance::

    # the hollow tetrahedron
    v0 v1 v2, 2
    v0 v1 v3, 3

Blank lines and lines starting with ``#`` are skipped. Vertex tokens are
bare integers or integers prefixed with ``v``. Missing faces are added by
closure.
"""

import math
from pathlib import Path

from loguru import logger

from ..models.complex import FilteredComplex, Simplex, build_complex
from .error_handling import DataError, ParseError


def _vertex(token: str) -> int:
    text = token[1:] if token[:1] in ("v", "V") else token
    if not text.isdigit():
        raise ValueError(token)
    return int(text)


def parse_filtration_line(line: str) -> Simplex | None:
    """Parse one line; None for blank and comment lines."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    head, sep, tail = stripped.rpartition(",")
    if not sep:
        raise ValueError("expected '<vertices>, <appearance>'")
    tokens = head.split()
    if not tokens:
        raise ValueError("no vertices")
    vertices = [_vertex(token) for token in tokens]
    appearance = float(tail.strip())
    if not math.isfinite(appearance):
        raise ValueError("appearance must be finite")
    if len(set(vertices)) != len(vertices):
        # left unsorted so build_complex reports the duplicate
        return Simplex(tuple(vertices), appearance)
    return Simplex.of(vertices, appearance)


def looks_like_filtration(path: str | Path) -> bool:
    """True when every content line of the file parses as a filtration line."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError):
        return False
    seen = False
    for line in lines:
        try:
            simplex = parse_filtration_line(line)
        except ValueError:
            return False
        seen = seen or simplex is not None
    return seen


def read_filtration_csv(path: str | Path) -> FilteredComplex:
    """Load an explicit filtration and close it under faces."""
    file_path = Path(path)
    try:
        lines = file_path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise DataError(f"Input file not found: {file_path}")
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"Cannot read {file_path}: {e}")

    simplices = []
    for number, line in enumerate(lines, start=1):
        try:
            simplex = parse_filtration_line(line)
        except ValueError as e:
            raise ParseError(f"{file_path}:{number}: invalid filtration line '{line.strip()}' ({e})", row=number)
        if simplex is not None:
            simplices.append(simplex)

    K = build_complex(simplices)
    logger.info(f"Loaded filtration from {file_path}: simplices per dimension {K.counts()}")
    return K
