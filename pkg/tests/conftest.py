import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ipdcluster.dataset import worked_example  # noqa: E402
from ipdcluster.distance import pairwise_matrix  # noqa: E402
from ipdcluster.io import load_ruspini  # noqa: E402
import acceptance_log  # noqa: E402


@pytest.fixture(scope="session")
def ruspini():
    return load_ruspini()


@pytest.fixture(scope="session")
def ruspini_D(ruspini):
    return pairwise_matrix(ruspini)


@pytest.fixture(scope="session")
def example():
    return worked_example()


@pytest.fixture(scope="session")
def example_D(example):
    return pairwise_matrix(example)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(acceptance_log.LINES, key=lambda item: str(item[0]).zfill(3)):
            terminalreporter.write_line(line)
