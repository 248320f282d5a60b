import pytest

from dehntwist.corpus import enumerate_instances, load_goldens

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def corpus():
    """Every filtered instance with at most three crossings."""
    return list(enumerate_instances(3))


@pytest.fixture(scope="session")
def goldens():
    return load_goldens()


@pytest.fixture
def record():
    def _record(number: int, ok: bool, detail: str = ""):
        ACCEPTANCE[number] = (ok, detail)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 9):
        if number not in ACCEPTANCE:
            terminalreporter.write_line(f"criterion {number}: NOT RUN")
            continue
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
