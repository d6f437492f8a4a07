import pytest

from gallai.coloring import EdgeColoring, decode

ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def e1() -> EdgeColoring:
    # parts {0,1} and {2,3} colored 1 and 2 inside, color 3 across
    return decode("4 3\n1 3 3 3 3 2\n")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
