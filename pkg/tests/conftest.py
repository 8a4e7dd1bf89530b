import pytest

from lattice13.core import numeric_mode

_REPORT = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): one of the numbered acceptance criteria")


@pytest.fixture
def report():
    """Record one line for the acceptance summary."""
    def add(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _REPORT.append((number, line))
        print(line)
    return add


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_REPORT):
        terminalreporter.write_line(line)


@pytest.fixture
def float_mode():
    with numeric_mode("float"):
        yield
