import pytest

from negspm import GapConstraint, SequenceDatabase, Threshold

# criterion number -> (description, passed); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def toy_db():
    return SequenceDatabase.from_strings(["baacaac", "ababccbb"])


@pytest.fixture
def gap01():
    return GapConstraint(0, 1)


@pytest.fixture
def rho013():
    return Threshold.parse("0.13")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {desc}")
