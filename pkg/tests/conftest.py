import numpy as np
import pytest

SHIPPED = (2, 3, 4, 5, 7, 8, 9)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
