import sys

import numpy as np
import pytest

from morreykit import MeasureSpace


@pytest.fixture
def two_atoms():
    return MeasureSpace([0.0, 1.0], [1.0, 1.0], 1.0)


@pytest.fixture
def three_atoms():
    return MeasureSpace([0.0, 1.0, 3.0], [1.0, 2.0, 4.0], 1.0)


def random_measure_1d(rng, size=None, n=1.0):
    size = size or int(rng.integers(2, 9))
    pos = np.unique(np.round(rng.uniform(0, 20, size), 3))
    return MeasureSpace(pos, np.round(rng.uniform(0.1, 5.0, len(pos)), 3), n)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
