import time

import pytest

SUITE_BUDGET_S = 90.0
_results = pytest.StashKey[dict]()
_start = pytest.StashKey[float]()


def pytest_configure(config):
    config.stash[_results] = {}
    config.stash[_start] = time.perf_counter()


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, passed, detail)``."""

    def record(number, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}"
        print(line)
        request.config.stash[_results][number] = line
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_results, {})
    if not results:
        return
    elapsed = time.perf_counter() - config.stash[_start]
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
    ok = elapsed < SUITE_BUDGET_S
    terminalreporter.write_line(
        f"{'PASS' if ok else 'FAIL'} suite wall time: {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"
    )


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - session.config.stash[_start]
    if elapsed >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
