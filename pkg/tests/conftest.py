import pytest
from hypothesis import settings

from padecheb import arith

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def X():
    return arith.extended()


@pytest.fixture(scope="session")
def D():
    return arith.double()


def pytest_terminal_summary(terminalreporter):
    from tests.acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
