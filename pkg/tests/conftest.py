import pytest

from resonance_emission import PotentialSpec, build_grid, build_table, solve

# Acceptance lines are collected here and echoed after the run so they land
# in the captured log even without -s.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


class Solved:
    def __init__(self, grid, potential, theta):
        self.grid = grid
        self.potential = potential
        self.theta = theta
        self.spectrum = solve(grid, potential, theta)
        self.table = build_table(self.spectrum)


@pytest.fixture(scope="session")
def well():
    return PotentialSpec.gaussian_well()


@pytest.fixture(scope="session")
def oscillator():
    return PotentialSpec.harmonic(1.0)


@pytest.fixture(scope="session")
def wide_grid():
    return build_grid(-160.0, 160.0, 801)


@pytest.fixture(scope="session")
def ho_grid():
    return build_grid(-12.0, 12.0, 241)


@pytest.fixture(scope="session")
def well_015(well, wide_grid):
    return Solved(wide_grid, well, 0.15)


@pytest.fixture(scope="session")
def well_000(well, wide_grid):
    return Solved(wide_grid, well, 0.0)


@pytest.fixture(scope="session")
def well_060(well):
    return Solved(build_grid(-40.0, 40.0, 801), well, 0.6)


@pytest.fixture(scope="session")
def ho_000(oscillator, ho_grid):
    return Solved(ho_grid, oscillator, 0.0)


@pytest.fixture(scope="session")
def ho_015(oscillator, ho_grid):
    return Solved(ho_grid, oscillator, 0.15)
