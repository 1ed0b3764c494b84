"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_RESULTS = {}
_NOTES = []


@pytest.fixture(scope="session")
def acceptance_notes():
    return _NOTES


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    key = (mark.args[0], mark.args[1])
    entry = _RESULTS.setdefault(key, {"passed": True, "tests": 0, "failed": []})
    if rep.when == "call":
        entry["tests"] += 1
    if rep.failed:
        entry["passed"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for (n, label), entry in sorted(_RESULTS.items()):
        status = "PASS" if entry["passed"] else "FAIL"
        extra = f" (failed: {', '.join(entry['failed'])})" if entry["failed"] else ""
        tr.write_line(f"{status} criterion {n}: {label} [{entry['tests']} tests]{extra}")
    for note in _NOTES:
        tr.write_line(f"note: {note}")
