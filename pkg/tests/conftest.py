"""Shared test machinery: a summary of the acceptance checks printed at
the end of the run, one line per criterion, pass or fail."""

import pytest

_criteria_lines = []


@pytest.fixture(scope="session")
def criterion():
    """Callable recording one pass/fail line for the final summary."""

    def note(line: str):
        _criteria_lines.append(line)

    return note


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria_lines:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in _criteria_lines:
        terminalreporter.write_line(line)
