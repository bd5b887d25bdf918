from typing import Dict, Literal, Optional

from ..analyzers.survival import BivariateWeibull
from ..models.params import ModelParams
from ..models.records import Category, Dataset, SubjectRecord
from ..numerics.quadrature import QuadratureSpec, integrate_finite
from .base import BaseLikelihood

CensoredFactor = Literal["tail", "joint_survival"]
RFactor = Literal["marginal", "sub_density"]


class TerminationLikelihood(BaseLikelihood):
    """
    종결(치명적) 사건 B 가 있는 경쟁위험 우도
    p: f_XY(t_x, t_y), q: -∂S/∂x(t_x, t_y), r: f_Y(t_y), 중도절단: Pr(t_i < X < Y)

    r_factor="sub_density" 와 censored_factor="joint_survival" 를 함께 쓰면
    관측 자료 우도 (r: -∂S/∂y(t_y, t_y), 중도절단: S(t_i, t_i)) 가 됨
    """

    def __init__(self, spec: Optional[QuadratureSpec] = None, censored_factor: CensoredFactor = "tail",
                 r_factor: RFactor = "marginal"):
        super().__init__("termination", spec)
        # joint_survival 은 중도절단 범주의 관측 확률 S(t_i, t_i) 를 사용
        self.censored_factor = censored_factor
        # sub_density 는 Y 가 X 보다 먼저 관측될 밀도 -∂S/∂y(y, y) 를 사용
        self.r_factor = r_factor

    def _log_censored(self, t: float, theta: ModelParams, cache: Optional[Dict[float, float]]) -> float:
        if cache is not None and t in cache:
            return cache[t]
        if self.censored_factor == "joint_survival":
            value = BivariateWeibull.log_joint_survival(t, t, theta)
        else:
            value = BivariateWeibull.log_tail_prob(t, theta, self.spec)
        if cache is not None:
            cache[t] = value
        return value

    def log_factor(self, record: SubjectRecord, theta: ModelParams,
                   cache: Optional[Dict[float, float]] = None) -> float:
        record.check_termination()
        category = record.category

        if category is Category.BOTH_OBSERVED:
            return BivariateWeibull.log_joint_density(record.t_x, record.t_y, theta)
        if category is Category.A_OBSERVED_B_CENSORED:
            return BivariateWeibull.log_neg_dS_dx(record.t_x, record.t_y, theta)
        if category is Category.B_OBSERVED_NO_A:
            if self.r_factor == "sub_density":
                return BivariateWeibull.log_neg_dS_dy(record.t_y, record.t_y, theta)
            return BivariateWeibull.log_marginal_density_y(record.t_y, theta)
        return self._log_censored(record.t_y, theta, cache)


def log_factor_termination(record: SubjectRecord, theta: ModelParams,
                           spec: Optional[QuadratureSpec] = None) -> float:
    return TerminationLikelihood(spec).log_factor(record, theta)


def loglik_termination(data: Dataset, theta: ModelParams,
                       spec: Optional[QuadratureSpec] = None,
                       censored_factor: CensoredFactor = "tail",
                       r_factor: RFactor = "marginal") -> float:
    return TerminationLikelihood(spec, censored_factor, r_factor).loglik(data, theta)


def category_masses(theta: ModelParams, t: float,
                    spec: Optional[QuadratureSpec] = None) -> Dict[str, float]:
    """공통 중도절단 시점 t 에서 네 관측 범주의 확률 (합은 1)"""
    spec = spec or QuadratureSpec.double()
    wb = BivariateWeibull

    def x_first(x: float) -> float:
        return wb.neg_dS_dx(x, x, theta)

    def x_then_censored(x: float) -> float:
        return wb.neg_dS_dx(x, t, theta)

    def y_first(y: float) -> float:
        return wb.neg_dS_dy(y, y, theta)

    x_first_by_t = integrate_finite(x_first, 0.0, t, spec)
    q = integrate_finite(x_then_censored, 0.0, t, spec)
    r = integrate_finite(y_first, 0.0, t, spec)
    censored = wb.joint_survival(t, t, theta)

    return {
        Category.BOTH_OBSERVED.value: max(x_first_by_t - q, 0.0),
        Category.A_OBSERVED_B_CENSORED.value: q,
        Category.B_OBSERVED_NO_A.value: r,
        Category.BOTH_CENSORED.value: censored,
    }


def category_probabilities(theta: ModelParams, t: float,
                           spec: Optional[QuadratureSpec] = None) -> Dict[str, float]:
    """
    공통 중도절단 시점 t 에서 네 관측 범주의 확률
    중도절단 범주는 두 사건 모두 t 이후인 경우 전체이므로 S(t, t) 이며,
    그 중 X 가 먼저인 부분이 tail_prob(t) 로 함께 보고됨
    """
    probabilities = category_masses(theta, t, spec)
    probabilities["censored_x_first"] = BivariateWeibull.tail_prob(t, theta)
    return probabilities
