import pytest

from patternlab.cache import CountProvider

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def provider():
    return CountProvider()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
