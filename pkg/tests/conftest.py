from __future__ import annotations

import json
from pathlib import Path

import pytest

from nilrad.catalog import load_catalog, verify_catalog

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def entries():
    return load_catalog()


@pytest.fixture(scope="session")
def by_id(entries):
    return {e.id: e for e in entries}


@pytest.fixture(scope="session")
def reports(entries):
    """One full verification run shared by the acceptance criteria."""
    return {r.id: r for r in verify_catalog(entries)}


@pytest.fixture(scope="session")
def torus_data():
    return json.loads((DATA / "torus7.json").read_text())


@pytest.fixture(scope="session")
def moment_data():
    return json.loads((DATA / "moments7.json").read_text())
