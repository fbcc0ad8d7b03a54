import numpy as np
import pytest

from powertsp.geometry import PointSet

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, detail: str):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number:2d}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def chain4():
    return PointSet([[0, 0], [1, 0], [2, 0], [3, 0]], 2.0)


@pytest.fixture
def unit_square():
    return PointSet([[0, 0], [1, 0], [1, 1], [0, 1]], 2.0)
