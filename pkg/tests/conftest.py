import numpy as np
import pytest

from drifteig import ModelParams


@pytest.fixture
def params():
    return ModelParams(alpha=0.2, kappa=1.0, m0=0.4)


@pytest.fixture
def rng():
    return np.random.default_rng(0xE16E)
