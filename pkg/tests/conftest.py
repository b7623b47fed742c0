"""Shared fixtures and the acceptance-criteria summary printer."""

import pytest

ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile the Gibbs kernels once so timed tests measure the algorithm."""
    from chronotopics import _gibbs

    _gibbs.warm_up()


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        ACCEPTANCE_RESULTS.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, outcome in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"  {outcome.upper():6s} {name}")
