import math
from typing import Sequence

import numpy as np
from scipy.special import expit, logit

from ..exceptions import DomainError
from ..models.params import ModelParams

# exp/expit 가 0 또는 inf 가 되지 않도록 하는 범위
_CLIP = 700.0


def to_unconstrained(theta: ModelParams) -> np.ndarray:
    """(logit α, log λ1, log γ1, log λ2, log γ2)"""
    if theta.alpha >= 1.0:
        raise DomainError("alpha = 1 lies on the boundary; nudge it to 1 - 1e-8 before transforming")
    return np.array([
        float(logit(theta.alpha)),
        math.log(theta.lambda1),
        math.log(theta.gamma1),
        math.log(theta.lambda2),
        math.log(theta.gamma2),
    ])


def from_unconstrained(v: Sequence[float]) -> ModelParams:
    v = np.clip(np.asarray(v, dtype=float), -_CLIP, _CLIP)
    return ModelParams(
        alpha=float(expit(v[0])),
        lambda1=math.exp(v[1]),
        gamma1=math.exp(v[2]),
        lambda2=math.exp(v[3]),
        gamma2=math.exp(v[4]),
    )


def margins_to_unconstrained(theta: ModelParams) -> np.ndarray:
    """α 를 고정한 경우의 (log λ1, log γ1, log λ2, log γ2)"""
    return np.log([theta.lambda1, theta.gamma1, theta.lambda2, theta.gamma2])


def margins_from_unconstrained(v: Sequence[float], alpha: float = 1.0) -> ModelParams:
    v = np.exp(np.clip(np.asarray(v, dtype=float), -_CLIP, _CLIP))
    return ModelParams(alpha=alpha, lambda1=v[0], gamma1=v[1], lambda2=v[2], gamma2=v[3])
