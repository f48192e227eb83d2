import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, label): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, label = mark.args
    ok, _, tests = _ACCEPTANCE.get(number, (True, label, set()))
    passed = rep.passed if rep.when == "call" else not rep.failed
    _ACCEPTANCE[number] = (ok and passed, label, tests | {item.nodeid})


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, label, tests = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{number}] {label}  ({len(tests)} tests)")
