import numpy as np
import pytest

from spatchfill.generate import random_ribbon

# Seeded acceptance corpus: every (n, d) with n in {4, 5, 6}, d in {3, 5}.
CORPUS = [((4, 5, 6)[k % 3], 3 if k < 5 else 5, k) for k in range(10)]

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def corpus():
    return [random_ribbon(n, d, seed=seed) for n, d, seed in CORPUS]


@pytest.fixture(scope="session")
def quintic_pentagon():
    return random_ribbon(5, 5, seed=1)


def random_affine(rng, dim=3):
    while True:
        m = rng.normal(size=(dim, dim))
        if abs(np.linalg.det(m)) > 0.2:
            return m, rng.normal(size=dim)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
