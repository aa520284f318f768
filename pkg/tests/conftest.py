import numpy as np
import pytest

from cdmaturbo.interleaver import default_permutation
from cdmaturbo.trellis import build_trellis


@pytest.fixture(scope="session")
def trellis():
    return build_trellis()


@pytest.fixture(scope="session")
def perm():
    return default_permutation(0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
