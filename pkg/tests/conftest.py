import numpy as np
import pytest

from lzbg.factorizer import warmup

GOLDEN = b"abaabababaaaaabbabab"

_acceptance_lines = []


@pytest.fixture(scope="session", autouse=True)
def _jit_warm():
    warmup()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        _acceptance_lines.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def random_texts(count, max_len, seed, alphabets=(2, 4, 26, 256), min_len=0):
    rng = np.random.default_rng(seed)
    for k in range(count):
        sigma = alphabets[k % len(alphabets)]
        n = int(rng.integers(min_len, max_len + 1))
        yield rng.integers(0, sigma, size=n, dtype=np.uint8).tobytes()
