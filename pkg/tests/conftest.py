"""Shared fixtures and the acceptance summary printed after the run."""

from __future__ import annotations

import numpy as np
import pytest

from graphci.graphstate import BipartiteGraphState

_CRITERIA: dict[int, dict] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def six_qubit():
    """Alice = {0, 1}; edges 1-3, 1-5, 2-3, 2-4, 2-6 in 1-based labels."""
    return BipartiteGraphState.from_edges(2, 4, [(0, 2), (0, 4), (1, 2), (1, 3), (1, 5)])


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if not marker:
        return
    number, title = marker
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": True, "tests": 0})
    entry["tests"] += 1
    entry["passed"] &= report.passed


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(f"[{status}] AC{number:<2d} {e['title']} ({e['tests']} tests)")
