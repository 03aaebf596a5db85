"""Shared test setup: import path for helper modules and the acceptance summary."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "admissibility of classical pairs",
    2: "integrality, reflections, strings, sign rule and multiples",
    3: "pairings are integers in [-4, 4]",
    4: "splitting elements are unique and additive",
    5: "Killing identities",
    6: "simple ideal decomposition of block sums",
    7: "subalgebras from closed root subsets of sl4",
    8: "maximal toral criterion",
    9: "partial sums of roots (A3, B2)",
    10: "abstract axioms, families and sdiv",
    11: "chains of truncations and sl_n embeddings",
    12: "theta automorphisms",
    13: "negative controls",
    14: "oracle equivalence for closures and Cartan solves",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    # setup errors and call results both count; teardown only when it fails
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(mark.args[0], []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        status = "NOT RUN" if results is None else ("PASS" if all(results) else "FAIL")
        terminalreporter.write_line(f"criterion {n:2d}: {status} ({title})")
