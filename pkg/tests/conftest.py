import pytest

from pearcey_boundary.boundary import restart_at, trace_rayleigh
from pearcey_boundary.kernels.tables import airy_zeros, phi4_zeros

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def xi1():
    return phi4_zeros(1)[0]


@pytest.fixture(scope="session")
def ai1():
    return airy_zeros(1)[0]


@pytest.fixture(scope="session")
def trace4():
    """Unprojected trace of the first branch on [0, 4] at default tolerances."""
    return trace_rayleigh(2.44197, 4.0)


@pytest.fixture(scope="session")
def trace12():
    """First branch on [0, 12], re-projected onto v(t, .) = 0 every 10 samples."""
    return trace_rayleigh(2.44197, 12.0, project_every=10)


@pytest.fixture(scope="session")
def restart10(ai1):
    return restart_at(10.0, ai1, 2.0, project_every=10)


@pytest.fixture
def acceptance():
    """Record a one-line verdict per acceptance criterion."""

    def record(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
