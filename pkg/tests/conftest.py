"""Collect acceptance criteria results and print one line per criterion."""

import pytest

_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    detail = ""
    if rep.failed and call.excinfo is not None:
        detail = str(call.excinfo.value).strip().splitlines()[0] if str(call.excinfo.value).strip() else call.excinfo.typename
    _RESULTS[number] = (title, "PASS" if rep.passed else "FAIL", rep.duration, detail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, status, secs, detail = _RESULTS[number]
        line = f"criterion {number} {status} ({secs:.2f}s) {title}"
        if detail:
            line += f" :: {detail}"
        terminalreporter.write_line(line)
