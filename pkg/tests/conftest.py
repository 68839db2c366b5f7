"""
Shared fixtures for the concept-homology test suite.
"""

from pathlib import Path

import pytest
from loguru import logger

from concept_homology.models.complex import FilteredComplex, Simplex, build_complex

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

ENV_VARS = [
    "CONCEPT_HOMOLOGY_LOG",
    "CONCEPT_HOMOLOGY_METRIC",
    "CONCEPT_HOMOLOGY_MAX_DIM",
    "CONCEPT_HOMOLOGY_R_MAX",
    "CONCEPT_HOMOLOGY_AT",
    "CONCEPT_HOMOLOGY_NORMALIZE",
    "CONCEPT_HOMOLOGY_MISSING",
    "CONCEPT_HOMOLOGY_MIN_PERSISTENCE",
]


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Run every test without CONCEPT_HOMOLOGY_* overrides and drop sinks afterwards."""
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    yield
    logger.remove()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def log_messages():
    """Collect loguru messages at DEBUG and above."""
    messages: list = []
    handler_id = logger.add(messages.append, level="DEBUG", format="{level}|{message}")
    yield messages
    logger.remove(handler_id)


def simplices(*specs: tuple[str, float]) -> list[Simplex]:
    """Simplices from ('012', 1.0) style specs."""
    return [Simplex.of((int(c) for c in vertices), appearance) for vertices, appearance in specs]


@pytest.fixture
def tetra_filtration() -> FilteredComplex:
    """Hollow tetrahedron: vertices at 0, edges at 1, triangles at 2, 3, 4, 5."""
    return build_complex(
        simplices(("012", 2), ("013", 3), ("023", 4), ("123", 5))
        + simplices(*((v, 0) for v in "0123"))
        + simplices(*((e, 1) for e in ("01", "02", "03", "12", "13", "23")))
    )


@pytest.fixture
def hollow_tetrahedron() -> FilteredComplex:
    return build_complex(simplices(("012", 0), ("013", 0), ("023", 0), ("123", 0)))


@pytest.fixture
def hollow_octahedron() -> FilteredComplex:
    """Octahedron surface on poles 0, 5 and equator 1-2-3-4."""
    equator = [(1, 2), (2, 3), (3, 4), (4, 1)]
    faces = [Simplex.of((pole, a, b)) for pole in (0, 5) for a, b in equator]
    return build_complex(faces)


@pytest.fixture
def run_cli(tmp_path, monkeypatch, capsys):
    """Invoke the command line in a scratch directory; returns (code, stdout, stderr)."""
    from concept_homology.cli.main import cli_main

    monkeypatch.chdir(tmp_path)

    def run(*args):
        code = cli_main([str(a) for a in args])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
