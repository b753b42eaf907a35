from __future__ import annotations

import pytest

from pgconics.gf import field_create


@pytest.fixture(params=[3, 5, 7, 9], ids=lambda q: f"q{q}")
def ctx(request):
    return field_create(request.param)


@pytest.fixture
def gf5():
    return field_create(5)


@pytest.fixture
def gf3():
    return field_create(3)


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call" and report.passed:
        return
    cid, title = marker.args
    entry = _ACCEPTANCE.setdefault(cid, {"title": title, "ok": True, "seen": False})
    entry["seen"] = entry["seen"] or report.when == "call"
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: (int(c.rstrip("abcdefgh")), c)):
        entry = _ACCEPTANCE[cid]
        verdict = "PASS" if entry["ok"] and entry["seen"] else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {cid}: {entry['title']}")
