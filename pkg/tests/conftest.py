import pytest

from cayley_kit.polytope import LatticePolytope, simplex

ACCEPTANCE_LINES = []


@pytest.fixture
def SQ():
    return LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture
def R1():
    return LatticePolytope([(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)])


@pytest.fixture
def D2():
    return simplex(2)


@pytest.fixture
def acceptance_report():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
