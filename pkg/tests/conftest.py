from __future__ import annotations

import pytest

_ACCEPTANCE_LINES: list = []


@pytest.fixture
def criterion():
    """Record a PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number, title: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} [{number}] {title}"
        if detail:
            line += f": {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    def skip(number, title: str, reason: str) -> None:
        _ACCEPTANCE_LINES.append(f"SKIP [{number}] {title}: {reason}")
        pytest.skip(reason)

    record.skip = skip
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
