from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from flatiso import fixture_path, load_group

settings.register_profile("flatiso", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("flatiso")


@pytest.fixture(scope="session")
def example_group():
    return load_group(fixture_path("heisenberg_r14_7.json"))


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(test_acceptance.TITLES):
        if n not in test_acceptance.RESULTS:
            terminalreporter.write_line(f"criterion {n} NOT RUN: {test_acceptance.TITLES[n]}")
            continue
        ok, detail = test_acceptance.RESULTS[n]
        terminalreporter.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}: {test_acceptance.TITLES[n]} - {detail}")
