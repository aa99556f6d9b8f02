import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from sylgal.galois import ag_as_geometry, gf, pg_as_geometry  # noqa: E402
from sylgal.geometry import Geometry  # noqa: E402

SEED = int(os.environ.get("SYLGAL_SEED", "20240607"))


@pytest.fixture
def seed():
    return SEED


@pytest.fixture(scope="session")
def fano():
    return pg_as_geometry(2, gf(2))[0]


@pytest.fixture(scope="session")
def ag23():
    return ag_as_geometry(2, gf(3))[0]


@pytest.fixture(scope="session")
def pg32():
    return pg_as_geometry(3, gf(2))[0]


@pytest.fixture(scope="session")
def ag33():
    return ag_as_geometry(3, gf(3))[0]


def fano_blocks():
    return [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


@pytest.fixture
def fano_lines():
    return Geometry(7, tuple(fano_blocks()))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=str):
        status, detail = results[key]
        terminalreporter.write_line(f"criterion {key}: {status} {detail}")
