from pathlib import Path

import pytest
from hypothesis import settings

from cayleyjordan.textio import read_matrix

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def example_matrix():
    return read_matrix(DATA / "example10.txt")


@pytest.fixture(scope="session")
def example_path():
    return DATA / "example10.txt"
