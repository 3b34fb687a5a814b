import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from multilat.catalog import builtin  # noqa: E402


@pytest.fixture
def rml7():
    return builtin("rml7")


@pytest.fixture
def rml7r():
    return builtin("rml7-repaired")


@pytest.fixture
def ml6():
    return builtin("ml6-poset")


@pytest.fixture
def fig2():
    return builtin("fig2-poset")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and (rep.when == "call" or rep.failed):
        note = getattr(item, "criterion_note", "")
        if rep.failed:
            note = str(rep.longrepr.reprcrash.message).splitlines()[0] if hasattr(rep.longrepr, "reprcrash") else note
        item.config._criteria[mark.args[0]] = ("PASS" if rep.passed else "FAIL", note)


def pytest_terminal_summary(terminalreporter, config):
    got = config._criteria
    if not got:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(got):
        status, note = got[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {note}")
