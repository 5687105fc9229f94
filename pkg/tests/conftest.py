import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, text = marker.args
    ok = report.passed
    prev = _RESULTS.get(number, (text, True, []))
    notes = prev[2] + list(getattr(item, "criterion_notes", []))
    _RESULTS[number] = (text, prev[1] and ok, notes)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        text, ok, notes = _RESULTS[number]
        extra = f"  ({'; '.join(notes)})" if notes else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {text}{extra}")
