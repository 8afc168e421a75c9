import pytest

# criterion lines collected by test_acceptance, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def record_criterion():
    def rec(n, name, ok):
        ACCEPTANCE_LINES[n] = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {name}"
    return rec
