import pytest

from qfrob.hsym import builtin, skew_inverse


@pytest.fixture(scope="session")
def r2():
    return builtin("r2")


@pytest.fixture(scope="session")
def r11():
    return builtin("r11")


@pytest.fixture(scope="session", params=["r2", "r11"])
def sym(request):
    return builtin(request.param)


@pytest.fixture(scope="session")
def r2_data(r2):
    return skew_inverse(r2)


@pytest.fixture(scope="session")
def r11_data(r11):
    return skew_inverse(r11)


# acceptance verdicts collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
