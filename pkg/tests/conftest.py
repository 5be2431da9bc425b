import numpy as np
import pytest

from topbath import SpinBasis, TopParams, coherent_state


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


@pytest.fixture(scope="session")
def small_top():
    """Chaotic top small enough for dense-oracle comparisons."""
    return TopParams(j=2.0, k=6.0, beta=0.47)


@pytest.fixture(scope="session")
def small_env(small_top):
    return coherent_state(SpinBasis(small_top.j), 0.85, 2.8)
