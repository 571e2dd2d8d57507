from pathlib import Path

import pytest

from densesl.io import load_group
from densesl.nfield import NumberField

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"

# filled by test_acceptance.py, echoed in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def O7():
    return NumberField([2, -1, 1])


@pytest.fixture(scope="session")
def O3():
    return NumberField([1, 1, 1])


@pytest.fixture(scope="session")
def H51():
    """<[[1,0],[19-alpha,1]], [[1,3-2alpha],[0,1]]> over Q(sqrt(-7))."""
    return load_group(DATA / "table1_group.json")


@pytest.fixture(scope="session")
def data_dir():
    return DATA
