import pytest

from mixsim.rng import make_rng

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return make_rng(12345, "tests")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
