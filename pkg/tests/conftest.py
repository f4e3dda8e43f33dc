"""Shared test plumbing: the acceptance-criterion result board.

test_acceptance.py records one line per criterion; the summary hook prints
them after the run so the pass/fail status of each is visible at a glance.
"""

from __future__ import annotations

ACCEPTANCE_BOARD: list[tuple[str, bool, str]] = []


def record_criterion(name: str, passed: bool, note: str = "") -> None:
    ACCEPTANCE_BOARD.append((name, passed, note))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_BOARD:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, passed, note in ACCEPTANCE_BOARD:
        status = "PASS" if passed else "FAIL"
        line = f"{status}  {name}"
        if note:
            line += f"  ({note})"
        tr.write_line(line)
