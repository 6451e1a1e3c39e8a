import os
import sys

import pytest

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, HERE)

FIXTURES = os.path.join(HERE, "fixtures")


def fixture_path(*parts):
    return os.path.join(FIXTURES, *parts)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        status, title, secs = results[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {title}  ({secs:.2f} s)")
