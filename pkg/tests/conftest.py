import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

import atlas  # noqa: E402


@pytest.fixture(scope="session")
def table1():
    return atlas.load_bundled(["1"])


@pytest.fixture(scope="session")
def bundled():
    return atlas.load_bundled()


@pytest.fixture(scope="session")
def by_id(bundled):
    return {r.id: r for r in bundled}
