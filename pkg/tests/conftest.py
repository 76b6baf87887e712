import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def criterion():
    """Time an acceptance criterion, enforce its runtime limit, record the outcome."""

    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            ACCEPTANCE_RESULTS[number] = f"FAIL  {number:2d}. {title} ({elapsed:.2f} s): {msg}"
            raise
        ACCEPTANCE_RESULTS[number] = f"PASS  {number:2d}. {title} ({elapsed:.2f} s)"

    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
