import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from randgenus.graph import build_graph, complete_graph, cycle_graph, petersen_graph

DATA = Path(__file__).parent / "data"

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {key}: {detail}")


@pytest.fixture
def theta():
    return build_graph(2, [(0, 1), (0, 1), (0, 1)])


@pytest.fixture
def triangle():
    return cycle_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def petersen():
    return petersen_graph()


def k33():
    return build_graph(6, [(i, j) for i in range(3) for j in range(3, 6)])
