from collections import defaultdict

import pytest

from hyperbell.hypergraph import complete_k_uniform, single_edge
from hyperbell.statevec import build_state

_criteria = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for mark in getattr(report, "criterion_marks", ()):
        _criteria[mark].append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    report.criterion_marks = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        results = _criteria[num]
        failed = [nid for nid, out in results if out != "passed"]
        status = "PASS" if not failed else "FAIL"
        terminalreporter.write_line(
            f"criterion {num:>2}: {status}  ({len(results) - len(failed)}/{len(results)} checks passed)"
        )
        for nid in failed:
            terminalreporter.write_line(f"    failed: {nid.split('::', 1)[-1]}")


@pytest.fixture(scope="session")
def h3():
    return build_state(single_edge(3))


@pytest.fixture(scope="session")
def uniform_state():
    cache = {}

    def get(n, k):
        if (n, k) not in cache:
            cache[n, k] = build_state(complete_k_uniform(n, k))
        return cache[n, k]

    return get
