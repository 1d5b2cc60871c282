import pytest

from ntnsim.scenario import load_builtin
from ntnsim.sim import run_scenario


@pytest.fixture(scope="session")
def default_cfg():
    return load_builtin("geo_default")


@pytest.fixture(scope="session")
def default_run(default_cfg):
    return run_scenario(default_cfg)


@pytest.fixture(scope="session")
def ideal_run():
    return run_scenario(load_builtin("geo_ideal"))


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
