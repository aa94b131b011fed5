import numpy as np
import pytest

from regslice.slodowy import SlodowySlice

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def slices():
    return {n: SlodowySlice.principal(n) for n in range(2, 6)}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
