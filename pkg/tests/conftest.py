import pytest

import fixtures


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    lines = []
    for status, mark in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(status, []):
            if "test_acceptance.py" in report.nodeid:
                name = report.nodeid.split("::")[-1]
                lines.append(f"{mark}  {name}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: l.split()[-1]):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def accessdb_like():
    return fixtures.accessdb_like()


@pytest.fixture(scope="session")
def accessreal_like():
    return fixtures.accessreal_like()


@pytest.fixture()
def tiny_dataset():
    return fixtures.tiny_dataset()
