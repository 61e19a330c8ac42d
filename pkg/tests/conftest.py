import numpy as np
import pytest
from scipy.stats import unitary_group


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def haar(dim, rng):
    return unitary_group.rvs(dim, random_state=rng)


# PASS/FAIL lines of the acceptance suite, printed after the test summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("AC")[1].split()[0])):
            terminalreporter.write_line(line)
