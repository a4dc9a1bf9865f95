"""Shared pytest configuration: per-criterion summary for the acceptance suite."""

import pytest

ACCEPTANCE_TITLES = {
    1: "Fibonacci fast doubling vs iterative oracle, m <= 20000, < 10 s",
    2: "phi_power(m) = (F_(m-1), F_m) vs repeated multiplication, m <= 1000",
    3: "height lemmas and norm = det on 200 random Q(sqrt 5) instances",
    4: "required-base arithmetic (9 > 7, >= 17 > 9, branch values, 13 < 14)",
    5: "hypotheses all Hold for 2.4, 2.5, 2.7 and growth verdicts as claimed",
    6: "Example 2.7 approximants N = 2..4: integral p, (21), (22), err decreasing, < 60 s",
    7: "Example 2.5 Z_N strictly decreasing on N = 2..5 and Z_5 < 1e-3",
    8: "identity (23) on 100 random tuples; record detection",
    9: "example 2.7 --format json is byte-identical across runs",
}

_results: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        prev = _results.get(n, True)
        _results[n] = prev and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_TITLES):
        if n not in _results:
            continue
        status = "PASS" if _results[n] else "FAIL"
        tr.write_line(f"criterion {n}: {status}  {ACCEPTANCE_TITLES[n]}")
