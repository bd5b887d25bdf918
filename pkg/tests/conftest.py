import numpy as np
import pytest

from termsurv.models.params import STANFORD_ESTIMATE, ModelParams


@pytest.fixture
def stanford_theta() -> ModelParams:
    return STANFORD_ESTIMATE


@pytest.fixture
def exponential_theta() -> ModelParams:
    """α = 1, 단위 척도 지수분포 두 개"""
    return ModelParams(alpha=1.0, lambda1=1.0, gamma1=1.0, lambda2=1.0, gamma2=1.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
