import os

import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "heavy: long-running checks, enabled by setting PEBBLING_HEAVY=1")
    config._criterion_lines = []


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PEBBLING_HEAVY"):
        return
    skip = pytest.mark.skip(reason="heavy check; set PEBBLING_HEAVY=1 to run")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def record_criterion(request):
    """Collect acceptance-criterion verdict lines for the terminal summary."""
    def rec(result):
        request.config._criterion_lines.append(result.line())
        return result
    return rec


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
