import numpy as np
import pytest

from opshift.classical import JacobiArrays, VerblunskySequence

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def free_jacobi():
    return JacobiArrays.free()


@pytest.fixture
def random_alpha():
    return VerblunskySequence("random", (7, 0.5))


@pytest.fixture
def record():
    """Print and keep a one-line verdict for the acceptance summary."""
    def _record(name: str, passed: bool, detail: str = ""):
        line = f"{'PASS' if passed else 'FAIL'} {name}" + (f": {detail}" if detail else "")
        print(line)
        ACCEPTANCE_LINES.append(line)
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
