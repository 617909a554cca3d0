import pytest

ACCEPTANCE: list[str] = []


@pytest.fixture
def report_line():
    def add(line: str) -> None:
        print(line)
        ACCEPTANCE.append(line)

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
