"""Shared fixtures and the slow-test switch."""

from pathlib import Path

import pytest

from src.puzzle import (
    Direction,
    Firefly,
    GridPoint,
    PuzzleInstance,
    load_instance,
    load_solution,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "data"


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size acceptance run, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def make_instance(width, height, *fireflies):
    """Build an instance from (x, y, dot, bends) tuples numbered in order."""
    return PuzzleInstance(
        width,
        height,
        tuple(
            Firefly(i, GridPoint(x, y), Direction(dot), bends)
            for i, (x, y, dot, bends) in enumerate(fireflies, start=1)
        ),
    )


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def six_by_six():
    return load_instance(str(DATA_DIR / "six_by_six.hotaru"))


@pytest.fixture
def six_by_six_solution():
    return load_solution(str(DATA_DIR / "six_by_six.solution"))


@pytest.fixture
def two_by_two():
    return load_instance(str(DATA_DIR / "two_by_two.hotaru"))


@pytest.fixture
def two_by_two_solution():
    return load_solution(str(DATA_DIR / "two_by_two.solution"))


@pytest.fixture
def three_in_a_row():
    return make_instance(3, 1, (0, 0, "E", 0), (2, 0, "W", 0))


@pytest.fixture
def two_components():
    return make_instance(5, 2, (0, 0, "E", 1), (1, 1, "W", 1), (3, 0, "E", 1), (4, 1, "W", 1))
