"""Shared test infrastructure: the acceptance criteria report.

Acceptance tests record one line per criterion; the lines are echoed
after the run in a dedicated terminal section so that a plain pytest
invocation always shows the full pass/fail table.
"""

from __future__ import annotations

ACCEPTANCE_LINES: list[tuple[int, str]] = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    line = f"ACCEPTANCE {number:2d}: {status} - {detail}"
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
