from __future__ import annotations

import pytest

_CRITERIA: dict[str, list[tuple[str, bool, str]]] = {}


@pytest.fixture
def criterion():
    """Record one clause of an acceptance criterion for the end-of-run summary."""

    def record(number: str, clause: str, ok: bool, detail: str) -> bool:
        _CRITERIA.setdefault(number, []).append((clause, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA, key=lambda n: int(n)):
        clauses = _CRITERIA[number]
        status = "PASS" if all(ok for _, ok, _ in clauses) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}")
        for clause, ok, detail in clauses:
            terminalreporter.write_line(f"    [{'pass' if ok else 'FAIL'}] {clause}: {detail}")
