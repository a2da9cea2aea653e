import pytest

from invsub.invariant_search import MatrixSet, full_lattice_scan

from tables import NILPOTENT4, NINE, SEVEN_A, SEVEN_B

# pass/fail line per acceptance criterion, filled in by test_acceptance.py
CRITERIA: dict = {}


@pytest.fixture(scope="session")
def scans():
    """Full lattice scans of the reference matrix sets, computed once."""
    cache = {}

    def get(name, shift=None):
        key = (name, shift)
        if key not in cache:
            mats = {"nilpotent4": NILPOTENT4, "seven_a": SEVEN_A, "seven_b": SEVEN_B, "nine": NINE}[name]
            ms = MatrixSet.with_auto_shift(mats) if shift is None else MatrixSet(tuple(mats), shift)
            cache[key] = (ms, full_lattice_scan(ms))
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        ok, text = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {text}")
