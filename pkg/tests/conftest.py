import json
import re
from pathlib import Path

import pytest

from counterpoint.dichotomy import classical as _classical

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def classical():
    return _classical()


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture
def gradus_doc():
    return json.loads((DATA / "gradus.json").read_text())


ACCEPTANCE_LOG: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    number = lambda name: (int(re.search(r"ac(\d+)", name).group(1)), name)
    for key in sorted(ACCEPTANCE_LOG, key=number):
        terminalreporter.write_line(ACCEPTANCE_LOG[key])
