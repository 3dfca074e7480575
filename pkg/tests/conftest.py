import numpy as np
import pytest


@pytest.fixture(scope="session")
def vitamin_d_studies():
    from skewsum.meta import load_vitamin_d

    return load_vitamin_d()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
