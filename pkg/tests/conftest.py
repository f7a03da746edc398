import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ccdim import build_complex
from ccdim.generators import ell_grid, grid, path, tripod

A1, A2, A3, B1, B2, B3 = range(6)


@pytest.fixture
def segment():
    return path(1)


@pytest.fixture
def path3():
    return path(3)


@pytest.fixture
def square():
    return build_complex(2, [[], [0], [1], [0, 1]])


@pytest.fixture
def tri():
    return tripod()


@pytest.fixture
def grid33():
    # a1, a2, b1, b2 = 0, 1, 2, 3
    return grid(3, 3)


@pytest.fixture
def ell():
    return ell_grid()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.result_line(n))
