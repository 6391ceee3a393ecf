"""Shared pytest plumbing: the acceptance-criteria summary hook.

Acceptance tests record one line per criterion through the ``acceptance``
fixture; the terminal-summary hook prints them after the run so every
criterion shows a single PASS/FAIL/SKIP line regardless of output capture.
"""

from __future__ import annotations

import pytest

_ACCEPTANCE_LINES: list[tuple[int, str]] = []


@pytest.fixture
def acceptance():
    """Record one acceptance-criterion outcome for the end-of-run summary.

    Call as ``acceptance(number, name, passed, note="")`` where passed is
    True, False, or None (skipped). The calling test still asserts/skips
    itself; this only controls the printed summary line.
    """

    def record(number: int, name: str, passed, note: str = ""):
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[passed]
        suffix = f" ({note})" if note else ""
        _ACCEPTANCE_LINES.append(
            (number, f"ACCEPTANCE {number} {name}: {status}{suffix}")
        )

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
