"""
이변량 Weibull 의 정확한 표본 추출과 종결 사건 관측 체계 데이터 생성

난수 생성기는 항상 numpy.random.Generator 로 주입합니다 (전역 난수 없음).
청크 병렬화가 필요하면 SeedSequence(seed).spawn(n_chunks) 로 청크별 생성기를 만들며,
(seed, n_chunks) 가 같으면 결과가 비트 단위로 같습니다.
"""
import functools
import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..exceptions import DomainError
from ..models.params import ModelParams
from ..likelihoods.termination import category_masses
from ..models.records import Category, Dataset, SubjectRecord
from ..numerics.quadrature import QuadratureSpec, integrate_finite

logger = logging.getLogger(__name__)

MIN_MC_DRAWS = 10_000
# 몬테카를로 추정 시 한 번에 메모리에 올리는 표본 수
MC_CHUNK = 1_000_000


class StudyDesign(BaseModel):
    """연구 설계: 대상자 수, 연구 종료 시점, 대상자별 최종 관찰 시점 분포"""
    model_config = ConfigDict(frozen=True)

    n_subjects: int = Field(ge=1)
    end_time: float = Field(gt=0)
    # (low, high) 균등분포 최종 관찰 시점, None 이면 end_time 점질량
    censor_uniform: Optional[Tuple[float, float]] = None

    @model_validator(mode="after")
    def _check_censor(self) -> "StudyDesign":
        if self.censor_uniform is not None:
            low, high = self.censor_uniform
            if not 0 < low <= high:
                raise ValueError(f"censor_uniform requires 0 < low <= high, got {self.censor_uniform}")
        return self

    @classmethod
    def stanford_like(cls, n_subjects: int) -> "StudyDesign":
        """순차 등록을 [1, 1460] 일 균등 최종 관찰 시점으로 근사"""
        return cls(n_subjects=n_subjects, end_time=1460.0, censor_uniform=(1.0, 1460.0))

    def censor_times(self, rng: np.random.Generator) -> np.ndarray:
        if self.censor_uniform is None:
            return np.full(self.n_subjects, self.end_time)
        low, high = self.censor_uniform
        return np.minimum(rng.uniform(low, high, size=self.n_subjects), self.end_time)


def spawn_generators(seed: int, n_chunks: int = 1) -> list:
    """청크별 독립 생성기"""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(n_chunks)]


def sample_positive_stable(alpha: float, rng: np.random.Generator, size=None):
    """
    Laplace 변환 E[exp(-sZ)] = exp(-s^α) 인 양의 안정 변수 (Chambers-Mallows-Stuck)
    Z = sin(αU) / (sin U)^(1/α) · [sin((1-α)U) / E]^((1-α)/α)
    """
    if not 0 < alpha < 1:
        raise DomainError(f"positive stable sampling requires 0 < alpha < 1, got {alpha}")
    u = rng.uniform(0.0, math.pi, size=size)
    e = rng.standard_exponential(size=size)
    log_z = (
        np.log(np.sin(alpha * u))
        - np.log(np.sin(u)) / alpha
        + (1.0 - alpha) / alpha * (np.log(np.sin((1.0 - alpha) * u)) - np.log(e))
    )
    return np.exp(log_z)


def sample_pair(theta: ModelParams, rng: np.random.Generator, size=None):
    """
    S_XY 를 정확히 따르는 (X, Y)
    Z 가 주어지면 (X/λ1)^(γ1/α), (Y/λ2)^(γ2/α) 는 독립 Exp(Z)
    """
    e1 = rng.standard_exponential(size=size)
    e2 = rng.standard_exponential(size=size)
    if theta.alpha >= 1.0:
        return theta.lambda1 * e1 ** (1.0 / theta.gamma1), theta.lambda2 * e2 ** (1.0 / theta.gamma2)

    z = sample_positive_stable(theta.alpha, rng, size=size)
    x = theta.lambda1 * (e1 / z) ** (theta.alpha / theta.gamma1)
    y = theta.lambda2 * (e2 / z) ** (theta.alpha / theta.gamma2)
    return x, y


def sample_pairs(theta: ModelParams, n: int, seed: int, n_chunks: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """seed 공간을 청크로 나누어 n 쌍 추출"""
    sizes = [n // n_chunks + (1 if i < n % n_chunks else 0) for i in range(n_chunks)]
    xs, ys = [], []
    for rng, size in zip(spawn_generators(seed, n_chunks), sizes):
        x, y = sample_pair(theta, rng, size=size)
        xs.append(x)
        ys.append(y)
    return np.concatenate(xs), np.concatenate(ys)


def observe(x: float, y: float, c: float) -> SubjectRecord:
    """잠재 시간 (x, y) 와 중도절단 시점 c 에 종결 사건 관측 체계 적용"""
    if x < y <= c:
        return SubjectRecord.both_observed(x, y)
    if x <= c < y:
        return SubjectRecord.a_observed(x, c)
    if y <= c and y <= x:
        return SubjectRecord.b_observed(y)
    return SubjectRecord.censored(c)


def generate_dataset(theta: ModelParams, design: StudyDesign, rng: np.random.Generator) -> Dataset:
    x, y = sample_pair(theta, rng, size=design.n_subjects)
    c = design.censor_times(rng)
    records = tuple(observe(float(xi), float(yi), float(ci)) for xi, yi, ci in zip(x, y, c))
    dataset = Dataset(records=records)
    logger.debug("simulated dataset: n=%d, counts=%s", dataset.n, dataset.counts)
    return dataset


def expected_category_proportions(theta: ModelParams, design: StudyDesign,
                                  spec: Optional[QuadratureSpec] = None) -> Dict[str, float]:
    """
    설계의 최종 관찰 시점 분포로 평균한 네 관측 범주의 기대 비율
    c = min(U(low, high), end_time) 이므로 end_time 에 남는 질량은 점질량으로 더함
    """
    outer = spec or QuadratureSpec.double()
    inner = outer.tighter(10.0)
    if design.censor_uniform is None:
        return category_masses(theta, design.end_time, inner)

    low, high = design.censor_uniform
    if high == low:
        return category_masses(theta, min(low, design.end_time), inner)
    upper = min(high, design.end_time)
    if upper <= low:
        return category_masses(theta, design.end_time, inner)

    masses = functools.lru_cache(maxsize=None)(lambda c: category_masses(theta, c, inner))
    width = high - low
    end_weight = (high - upper) / width
    proportions = {}
    for category in Category:
        key = category.value
        value = integrate_finite(lambda c: masses(c)[key], low, upper, outer) / width
        if end_weight > 0:
            value += end_weight * masses(design.end_time)[key]
        proportions[key] = value
    return proportions


def _mc_fraction(indicator, theta: ModelParams, n_draws: int, rng: np.random.Generator) -> Tuple[float, float]:
    if n_draws < MIN_MC_DRAWS:
        raise DomainError(f"Monte-Carlo oracles need at least {MIN_MC_DRAWS} draws, got {n_draws}")
    hits = 0
    remaining = n_draws
    while remaining > 0:
        size = min(remaining, MC_CHUNK)
        x, y = sample_pair(theta, rng, size=size)
        hits += int(np.count_nonzero(indicator(x, y)))
        remaining -= size
    estimate = hits / n_draws
    return estimate, math.sqrt(estimate * (1.0 - estimate) / n_draws)


def mc_tail_prob(t: float, theta: ModelParams, n_draws: int, rng: np.random.Generator) -> Tuple[float, float]:
    """Pr(t < X < Y) 의 몬테카를로 추정값과 이항 표준오차"""
    return _mc_fraction(lambda x, y: (t < x) & (x < y), theta, n_draws, rng)


def mc_joint_survival(x0: float, y0: float, theta: ModelParams, n_draws: int,
                      rng: np.random.Generator) -> Tuple[float, float]:
    """Pr(X > x0, Y > y0) 의 몬테카를로 추정값과 표준오차"""
    return _mc_fraction(lambda x, y: (x > x0) & (y > y0), theta, n_draws, rng)
