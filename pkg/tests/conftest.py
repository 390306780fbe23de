import numpy as np
import pytest

from dmkp_lab import ModelParams, build_grid


@pytest.fixture
def dmkp_params():
    return ModelParams.dmkp()


@pytest.fixture
def grid8():
    return build_grid(8, 8, 2 * np.pi, 2 * np.pi)


@pytest.fixture
def grid16():
    return build_grid(16, 16, 2 * np.pi, 2 * np.pi)


@pytest.fixture
def grid32():
    return build_grid(32, 32, 2 * np.pi, 2 * np.pi)
