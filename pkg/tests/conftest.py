from __future__ import annotations

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion n")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    row = _RESULTS.setdefault(n, {"text": text, "ok": True, "ran": False})
    if call.when == "call":
        row["ran"] = True
    if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
        row["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        row = _RESULTS[n]
        verdict = "PASS" if row["ok"] and row["ran"] else "FAIL"
        terminalreporter.write_line(f"criterion {n:>2}: {verdict}  {row['text']}")
