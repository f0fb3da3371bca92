import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from genylm.geometry import random_axes  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def axes(rng):
    return random_axes(rng, 100)


def sphere_points(rng, n, theta_min=0.0):
    theta = rng.uniform(theta_min, math.pi - theta_min, n)
    phi = rng.uniform(0.0, 2 * math.pi, n)
    return theta, phi


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
