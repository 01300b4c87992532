import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def toy():
    from epspace import TOY

    return TOY


@pytest.fixture(scope="session")
def desk():
    from epspace import DESK

    return DESK


@pytest.fixture(scope="session")
def witness_cfg():
    from epspace import WITNESS

    return WITNESS
