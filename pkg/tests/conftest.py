import time
from contextlib import contextmanager

import pytest

CRITERIA = []


@contextmanager
def _criterion(number, title, limit):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        note = "" if within else f" over {limit:g}s limit"
        line = f"criterion {str(number):>3}: {status}  {title}  ({elapsed:.2f}s{note})"
        CRITERIA.append((number, line))
        print(line)
    assert within, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in CRITERIA:
        terminalreporter.write_line(line)
