"""Shared fixtures.  Acceptance criteria report one PASS/FAIL line each.

The lines are printed inside the test (visible with ``-s``) and repeated in
the terminal summary so they also appear in a plain ``pytest -v`` log.
"""
import pytest

_CRITERIA = {}


@pytest.fixture
def report():
    def _report(number, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        _CRITERIA[number] = line
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[number])
