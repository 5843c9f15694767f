import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.fixture
def detail(request):
    """Collects a one-line summary of what an acceptance test measured."""
    notes = []
    request.node._criterion_notes = notes
    return notes.append


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    num, title = mark.args
    notes = "; ".join(getattr(item, "_criterion_notes", []))
    _CRITERIA[num] = (rep.passed, title, notes)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        ok, title, notes = _CRITERIA[num]
        line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}"
        if notes:
            line += f"  [{notes}]"
        terminalreporter.write_line(line)
