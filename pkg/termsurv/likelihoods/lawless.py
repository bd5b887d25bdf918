import math
from typing import Dict, Optional, Sequence

from ..analyzers.survival import BivariateWeibull, WeibullMargin
from ..models.params import ModelParams
from ..models.records import Category, Dataset, SubjectRecord
from ..numerics.quadrature import QuadratureSpec
from .base import BaseLikelihood


class LawlessLikelihood(BaseLikelihood):
    """
    두 사건 모두 관측 가능한 경우의 우도
    p: f_XY, q: -∂S/∂x, r: -∂S/∂y, 중도절단: S_XY
    """

    def __init__(self, spec: Optional[QuadratureSpec] = None):
        super().__init__("lawless", spec)

    def log_factor(self, record: SubjectRecord, theta: ModelParams,
                   cache: Optional[Dict[float, float]] = None) -> float:
        t_x, t_y = record.t_x, record.t_y
        category = record.category

        if category is Category.BOTH_OBSERVED:
            return BivariateWeibull.log_joint_density(t_x, t_y, theta)
        if category is Category.A_OBSERVED_B_CENSORED:
            return BivariateWeibull.log_neg_dS_dx(t_x, t_y, theta)
        if category is Category.B_OBSERVED_NO_A:
            return BivariateWeibull.log_neg_dS_dy(t_x, t_y, theta)
        return BivariateWeibull.log_joint_survival(t_x, t_y, theta)


def loglik_lawless(data: Dataset, theta: ModelParams, spec: Optional[QuadratureSpec] = None) -> float:
    return LawlessLikelihood(spec).loglik(data, theta)


def loglik_univariate_weibull(times: Sequence[float], events: Sequence[bool], lam: float, gamma: float) -> float:
    """중도절단 단변량 Weibull 로그우도"""
    return math.fsum(
        WeibullMargin.log_density(t, lam, gamma) if event else WeibullMargin.log_survival(t, lam, gamma)
        for t, event in zip(times, events)
    )
