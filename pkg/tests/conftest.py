import numpy as np
import pytest

ACCEPTANCE_RESULTS = []


def gray_rows_for_bits(bits: int) -> np.ndarray:
    """An 8x9 gray grid whose row comparisons reproduce ``bits`` exactly."""
    gray = np.zeros((8, 9), dtype=np.uint8)
    for r in range(8):
        byte = (bits >> (8 * (7 - r))) & 0xFF
        value = 100
        gray[r, 0] = value
        for j in range(8):
            value += -1 if (byte >> (7 - j)) & 1 else 1
            gray[r, j + 1] = value
    return gray


def gray_to_rgb(gray) -> np.ndarray:
    return np.repeat(np.asarray(gray, dtype=np.uint8)[..., None], 3, axis=2)


@pytest.fixture
def rng():
    return np.random.default_rng(20220724)


@pytest.fixture
def acceptance():
    """Record one named criterion outcome for the end-of-run summary."""
    def record(name, passed, detail=""):
        ACCEPTANCE_RESULTS.append((name, passed, detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
