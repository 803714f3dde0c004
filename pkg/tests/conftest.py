import pytest
from hypothesis import HealthCheck, settings

from helpers import SELF_CLASH, F, example_base

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def clash_base():
    return example_base("clash")


@pytest.fixture
def consistent_base():
    return example_base("consistent")


@pytest.fixture
def internal_base():
    return example_base("internal")


@pytest.fixture
def chain_base():
    return example_base("chain")


@pytest.fixture
def self_clash():
    return F(SELF_CLASH)


# -- acceptance summary ----------------------------------------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    rep = (yield).get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or rep.failed):
        return
    number, title = mark.args
    ok = _criteria.get(number, (title, True))[1]
    _criteria[number] = (title, ok and not rep.failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
