from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERIA: dict = {}


@pytest.fixture
def criterion():
    """``criterion(key, ok, note)`` records one acceptance line; a key may be recorded by several tests."""

    def record(key, ok: bool, note: str = ""):
        prev = _CRITERIA.get(key)
        ok = bool(ok) and (prev is None or prev[0])
        notes = [n for n in ((prev[1] if prev else ""), note) if n]
        _CRITERIA[key] = (ok, "; ".join(notes))
        print(f"criterion {key}: {'PASS' if ok else 'FAIL'} {note}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: (int(str(k).split(".")[0]), str(k))):
        ok, note = _CRITERIA[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {note}")
