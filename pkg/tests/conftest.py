"""Collects acceptance outcomes and prints them after the run."""

import pytest

_OUTCOMES: list[tuple[str, str, bool, str]] = []


@pytest.fixture
def accept():
    """Record one acceptance check; returns the outcome so tests can assert on it."""

    def record(criterion: str, name: str, ok: bool, detail: str = "") -> bool:
        _OUTCOMES.append((criterion, name, bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    by_criterion: dict[str, bool] = {}
    for crit, name, ok, detail in _OUTCOMES:
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  [{crit}] {name}" + (f"  ({detail})" if detail else ""))
        by_criterion[crit] = by_criterion.get(crit, True) and ok
    tr.write_line("")
    for crit in sorted(by_criterion, key=int):
        tr.write_line(f"{'PASS' if by_criterion[crit] else 'FAIL'}  criterion {crit}")
