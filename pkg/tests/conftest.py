import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wicks.transforms import enumerate_genus  # noqa: E402


@pytest.fixture(scope="session")
def genus2():
    return enumerate_genus(2)


@pytest.fixture(scope="session")
def genus3():
    return enumerate_genus(3)
