"""Shared fixtures: the bundled corpus, its frozen counts, and API clients."""

import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
WNDB_DIR = FIXTURES / "wndb"


@pytest.fixture(scope="session")
def wndb_dir() -> Path:
    return WNDB_DIR


@pytest.fixture(scope="session")
def corpus(wndb_dir):
    from lexibridge.wndb import load_source

    return load_source(wndb_dir)


@pytest.fixture(scope="session")
def sources(corpus):
    return corpus[0]


@pytest.fixture(scope="session")
def corpus_report(corpus):
    return corpus[1]


@pytest.fixture(scope="session")
def manifest(wndb_dir) -> dict:
    """Counts for the bundled corpus, derived by naive field arithmetic
    over the raw files (independent of the parser under test) and frozen."""
    return json.loads((wndb_dir / "manifest.json").read_text(encoding="utf-8"))
