import sys

from pathlib import Path

import pytest

from scalemine.corpus import tokenize
from scalemine.patterns import load_patterns
from scalemine.tagger import Tagger, load_inventory

FIXTURES = Path(__file__).parent / "fixtures"
sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def inventory():
    return load_inventory()


@pytest.fixture(scope="session")
def patterns():
    return load_patterns()


@pytest.fixture(scope="session")
def tagger(inventory):
    return Tagger(inventory=inventory)


@pytest.fixture(scope="session")
def tag_text(tagger):
    def run(text, post_id="p"):
        return tagger(tokenize(text), post_id)
    return run


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA
    terminalreporter.section("acceptance criteria")
    for name, label in CRITERIA:
        outcome = _ACCEPTANCE.get(name)
        if outcome is None:
            continue
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")
