import pytest

from paravec import Config
from paravec.config import Tolerances, set_defaults
from paravec.model import normalize_orientation
from paravec.test_helper import load_example


@pytest.fixture(autouse=True)
def reset_config():
    """restore the default configuration after each test"""
    yield
    for attr in list(vars(Config)):
        if attr != "_value":
            delattr(Config, attr)
    set_defaults()


@pytest.fixture
def tolerances():
    return Tolerances()


@pytest.fixture
def three_objectives():
    """maximize (x1, x2 - x3, x3) s.t. x1 + x2 <= 5, x1 + 2 x2 - x3 <= 9"""
    return load_example("three_objectives")


@pytest.fixture
def two_objectives():
    return load_example("two_objectives")


@pytest.fixture
def bounded():
    return load_example("bounded")


@pytest.fixture
def negative_rhs():
    return load_example("negative_rhs")


@pytest.fixture
def no_solution():
    """maximize x over the whole orthant, the lower image is R^2"""
    return load_example("no_solution")


@pytest.fixture
def normalized3(three_objectives):
    """The three objective example normalized, c = (1, 1, 1)"""
    return normalize_orientation(three_objectives)
