import numpy as np
import pytest

from core.config.train_config import TrainConfig
from core.data.series import normalize
from core.data.splits import split_chronological
from core.data.synthetic import sinusoid_mixture


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow training tests")
    parser.addoption("--reproduction", action="store_true", default=False, help="run the Exchange-Rate reproduction")


def pytest_collection_modifyitems(config, items):
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    skip_reproduction = pytest.mark.skip(reason="needs --reproduction")
    for item in items:
        if "slow" in item.keywords and not config.getoption("--runslow"):
            item.add_marker(skip_slow)
        if "reproduction" in item.keywords and not config.getoption("--reproduction"):
            item.add_marker(skip_reproduction)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def sinusoids():
    """4 змінні, T=400, нормалізовані за максимумом"""
    return normalize(sinusoid_mixture(400, 4, seed=0), "max")


@pytest.fixture
def small_series():
    return normalize(sinusoid_mixture(60, 3, seed=1), "max")


@pytest.fixture
def small_split(small_series):
    return split_chronological(small_series.timestamps, min_length=6)


@pytest.fixture
def micro_config():
    """n=3, d=5, l=4, k=2, N=2"""
    return TrainConfig(lr=1e-3, epochs=2, l2=1e-4, k=2, neighbors=2, hidden=4, window=5, horizon=1, seed=0)
