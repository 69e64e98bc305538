import numpy as np
import pytest

from hessian_symm.geometry import Ball, Ellipsoid, Polygon, Polytope3D

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def square():
    return Polygon(np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]), label="square")


@pytest.fixture
def unit_square():
    return Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]), label="unit-square")


@pytest.fixture
def cube():
    v = np.array([[x, y, z] for x in (0.0, 1.0) for y in (0.0, 1.0) for z in (0.0, 1.0)])
    return Polytope3D(v, label="cube")


@pytest.fixture
def ellipse():
    return Ellipsoid(np.zeros(2), [1.2, 1 / 1.2], label="ellipse-1.2")


@pytest.fixture
def disk():
    return Ball(np.zeros(2), 1.0, label="disk")


def ellipse_c(a: float) -> float:
    return 1.0 / (1.0 / a**2 + a**2)
