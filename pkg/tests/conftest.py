import pytest

from entropybench.symbol_model import FrequencyTable, to_probability_model

SKEWED_COUNTS = {0: 100, 2: 10, 14: 9, 136: 7, 222: 5}
REFERENCE_CODES = {0: "1", 2: "011", 14: "010", 136: "001", 222: "000"}
# two-decimal probabilities as counts out of 100
ROUNDED_COUNTS = {0: 63, 2: 11, 14: 10, 136: 10, 222: 6}


@pytest.fixture
def skewed_table():
    return FrequencyTable(SKEWED_COUNTS)


@pytest.fixture
def rounded_model():
    return to_probability_model(FrequencyTable(ROUNDED_COUNTS))


# (criterion, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
