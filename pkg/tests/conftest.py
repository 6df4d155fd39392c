import numpy as np
import pytest

from fwberry import representation_2p1, representation_4p1


@pytest.fixture(scope="session")
def rep2():
    return representation_2p1()


@pytest.fixture(scope="session")
def rep4():
    return representation_4p1()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
