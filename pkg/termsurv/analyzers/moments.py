import logging
import math
from typing import Literal, Optional, Tuple

from ..exceptions import QuadratureError
from ..models.params import ModelParams
from ..models.reports import MomentsReport
from ..numerics.quadrature import QuadratureSpec, gamma_fn, integrate_semi_infinite
from .survival import BivariateWeibull

logger = logging.getLogger(__name__)

# 수치적으로 허용하는 음의 상관 한계
NEGATIVE_CORR_TOL = 1e-6


class MomentsAnalyzer:
    @staticmethod
    def weibull_moments(lam: float, gamma: float) -> Tuple[float, float]:
        """Weibull(λ, γ) 평균과 분산"""
        g1 = gamma_fn(1.0 + 1.0 / gamma)
        g2 = gamma_fn(1.0 + 2.0 / gamma)
        return lam * g1, lam * lam * (g2 - g1 * g1)

    @staticmethod
    def marginal_moments(theta: ModelParams) -> Tuple[float, float, float, float]:
        """(E(X), Var(X), E(Y), Var(Y))"""
        mean_x, var_x = MomentsAnalyzer.weibull_moments(theta.lambda1, theta.gamma1)
        mean_y, var_y = MomentsAnalyzer.weibull_moments(theta.lambda2, theta.gamma2)
        return mean_x, var_x, mean_y, var_y

    @staticmethod
    def cross_moment(theta: ModelParams, spec: Optional[QuadratureSpec] = None) -> float:
        """
        E[XY] = ∬ S_XY(x, y) dx dy (반복 반무한 적분)
        내부 적분은 외부보다 10배 엄격한 허용오차를 사용
        """
        outer = spec or QuadratureSpec.double()
        inner = outer.tighter(10.0)

        def inner_integral(x: float) -> float:
            return integrate_semi_infinite(
                lambda y: BivariateWeibull.joint_survival(x, y, theta),
                0.0, inner, scale=theta.lambda2,
            )

        value = integrate_semi_infinite(inner_integral, 0.0, outer, scale=theta.lambda1)
        logger.debug("E[XY] by quadrature at %s: %.10g", theta, value)
        return value

    @staticmethod
    def cross_moment_closed_form(theta: ModelParams) -> float:
        """
        양의 안정 frailty 표현에서 얻은 닫힌 형태
        E[XY] = λ1λ2 Γ(1+α/γ1) Γ(1+α/γ2) Γ(1+1/γ1+1/γ2) / Γ(1+α/γ1+α/γ2)
        """
        a, g1, g2 = theta.alpha, theta.gamma1, theta.gamma2
        log_value = (
            math.log(theta.lambda1) + math.log(theta.lambda2)
            + math.lgamma(1.0 + a / g1) + math.lgamma(1.0 + a / g2)
            + math.lgamma(1.0 + 1.0 / g1 + 1.0 / g2)
            - math.lgamma(1.0 + a / g1 + a / g2)
        )
        return math.exp(log_value)

    @staticmethod
    def correlation(theta: ModelParams, spec: Optional[QuadratureSpec] = None,
                    method: Literal["quadrature", "closed"] = "quadrature") -> float:
        """Corr(X, Y)"""
        mean_x, var_x, mean_y, var_y = MomentsAnalyzer.marginal_moments(theta)
        if method == "closed":
            exy = MomentsAnalyzer.cross_moment_closed_form(theta)
        else:
            exy = MomentsAnalyzer.cross_moment(theta, spec)

        corr = (exy - mean_x * mean_y) / math.sqrt(var_x * var_y)
        if corr < -NEGATIVE_CORR_TOL or corr > 1.0:
            raise QuadratureError(f"correlation {corr} outside [0, 1] for {theta}")
        return min(max(corr, 0.0), 1.0)

    @staticmethod
    def kendall_tau(theta: ModelParams) -> float:
        """이 copula 의 Kendall 순위상관 1 - α"""
        return 1.0 - theta.alpha

    @staticmethod
    def report(theta: ModelParams, spec: Optional[QuadratureSpec] = None) -> MomentsReport:
        mean_x, var_x, mean_y, var_y = MomentsAnalyzer.marginal_moments(theta)
        exy = MomentsAnalyzer.cross_moment(theta, spec)
        sd_product = math.sqrt(var_x * var_y)
        corr = (exy - mean_x * mean_y) / sd_product
        if corr < -NEGATIVE_CORR_TOL:
            raise QuadratureError(f"negative correlation {corr} for {theta}")
        corr_closed = (MomentsAnalyzer.cross_moment_closed_form(theta) - mean_x * mean_y) / sd_product

        return MomentsReport(
            params=theta,
            mean_x=mean_x,
            mean_y=mean_y,
            var_x=var_x,
            var_y=var_y,
            cross_moment=exy,
            corr_xy=min(max(corr, 0.0), 1.0),
            corr_closed_form=corr_closed,
            kendall_tau=MomentsAnalyzer.kendall_tau(theta),
        )
