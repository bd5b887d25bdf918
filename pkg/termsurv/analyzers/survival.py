import logging
import math
from typing import Optional

import numpy as np

from ..exceptions import DomainError, QuadratureError
from ..models.params import ModelParams
from ..numerics.quadrature import QuadratureSpec, integrate_finite, integrate_semi_infinite

logger = logging.getLogger(__name__)

# 확률값이 이 범위만큼 [0, S(t,t)] 를 벗어나면 경계로 자르고, 그 이상은 오류
CLAMP_TOL = 1e-9
# 1 - Pr(Y 먼저)/S(t,t) 가 이보다 작으면 자릿수 손실이 커서 X 먼저 적분을 직접 계산
CANCELLATION_RATIO = 1e-2


def _check_time(t: float, name: str) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise DomainError(f"{name} must be a finite nonnegative time, got {t}")
    return t


def _check_positive_time(t: float, name: str, shape_ratio: float) -> float:
    t = _check_time(t, name)
    if t == 0:
        if shape_ratio < 1:
            raise DomainError(f"singular at origin: {name} = 0 with shape ratio {shape_ratio:.4g} < 1")
        raise DomainError(f"{name} must be > 0 (zero observation times are rejected)")
    return t


def _log_power(t: float, scale: float, exponent: float) -> float:
    """log((t/scale)^exponent), t = 0 이면 -inf"""
    if t == 0:
        return -math.inf
    return exponent * (math.log(t) - math.log(scale))


class WeibullMargin:
    """단변량 Weibull(λ, γ) 보조 함수"""

    @staticmethod
    def log_survival(t: float, lam: float, gamma: float) -> float:
        return -math.exp(_log_power(t, lam, gamma)) if t > 0 else 0.0

    @staticmethod
    def survival(t: float, lam: float, gamma: float) -> float:
        return math.exp(WeibullMargin.log_survival(t, lam, gamma))

    @staticmethod
    def log_density(t: float, lam: float, gamma: float) -> float:
        if not t > 0:
            raise DomainError(f"Weibull density requires t > 0, got {t}")
        log_ratio = math.log(t) - math.log(lam)
        return math.log(gamma) - math.log(lam) + (gamma - 1.0) * log_ratio - math.exp(gamma * log_ratio)

    @staticmethod
    def density(t: float, lam: float, gamma: float) -> float:
        return math.exp(WeibullMargin.log_density(t, lam, gamma))

    @staticmethod
    def quantile(p: float, lam: float, gamma: float) -> float:
        """S(t) = 1 - p 를 만족하는 t"""
        if not 0 <= p < 1:
            raise DomainError(f"quantile requires 0 <= p < 1, got {p}")
        return lam * (-math.log1p(-p)) ** (1.0 / gamma)

    @staticmethod
    def median(lam: float, gamma: float) -> float:
        return lam * math.log(2.0) ** (1.0 / gamma)


class BivariateWeibull:
    """
    이변량 Weibull 생존모형
    S(x, y) = exp{-[(x/λ1)^(γ1/α) + (y/λ2)^(γ2/α)]^α}
    """

    @staticmethod
    def _log_terms(x: float, y: float, theta: ModelParams):
        log_a = _log_power(x, theta.lambda1, theta.gamma1 / theta.alpha)
        log_b = _log_power(y, theta.lambda2, theta.gamma2 / theta.alpha)
        log_s = float(np.logaddexp(log_a, log_b))
        return log_a, log_b, log_s

    @staticmethod
    def log_joint_survival(x: float, y: float, theta: ModelParams) -> float:
        x = _check_time(x, "x")
        y = _check_time(y, "y")
        _, _, log_s = BivariateWeibull._log_terms(x, y, theta)
        return -math.exp(theta.alpha * log_s)

    @staticmethod
    def joint_survival(x: float, y: float, theta: ModelParams) -> float:
        """S_XY(x, y) = Pr(X > x, Y > y)"""
        return math.exp(BivariateWeibull.log_joint_survival(x, y, theta))

    @staticmethod
    def marginal_survival_x(x: float, theta: ModelParams) -> float:
        return BivariateWeibull.joint_survival(x, 0.0, theta)

    @staticmethod
    def marginal_survival_y(y: float, theta: ModelParams) -> float:
        return BivariateWeibull.joint_survival(0.0, y, theta)

    @staticmethod
    def joint_cdf(x: float, y: float, theta: ModelParams) -> float:
        """F_XY(x, y) = 1 - S_X(x) - S_Y(y) + S_XY(x, y)"""
        return (
            1.0
            - BivariateWeibull.marginal_survival_x(x, theta)
            - BivariateWeibull.marginal_survival_y(y, theta)
            + BivariateWeibull.joint_survival(x, y, theta)
        )

    @staticmethod
    def log_neg_dS_dx(x: float, y: float, theta: ModelParams) -> float:
        x = _check_positive_time(x, "x", theta.gamma1 / theta.alpha)
        y = _check_time(y, "y")
        log_a, _, log_s = BivariateWeibull._log_terms(x, y, theta)
        return (
            -math.exp(theta.alpha * log_s)
            + math.log(theta.gamma1) + log_a + (theta.alpha - 1.0) * log_s - math.log(x)
        )

    @staticmethod
    def neg_dS_dx(x: float, y: float, theta: ModelParams) -> float:
        """-∂S/∂x: A 가 x 에서 관측되고 B 는 y 에서 중도절단된 부분밀도"""
        return math.exp(BivariateWeibull.log_neg_dS_dx(x, y, theta))

    @staticmethod
    def log_neg_dS_dy(x: float, y: float, theta: ModelParams) -> float:
        x = _check_time(x, "x")
        y = _check_positive_time(y, "y", theta.gamma2 / theta.alpha)
        _, log_b, log_s = BivariateWeibull._log_terms(x, y, theta)
        return (
            -math.exp(theta.alpha * log_s)
            + math.log(theta.gamma2) + log_b + (theta.alpha - 1.0) * log_s - math.log(y)
        )

    @staticmethod
    def neg_dS_dy(x: float, y: float, theta: ModelParams) -> float:
        """-∂S/∂y"""
        return math.exp(BivariateWeibull.log_neg_dS_dy(x, y, theta))

    @staticmethod
    def log_joint_density(x: float, y: float, theta: ModelParams) -> float:
        x = _check_positive_time(x, "x", theta.gamma1 / theta.alpha)
        y = _check_positive_time(y, "y", theta.gamma2 / theta.alpha)
        alpha = theta.alpha
        log_a, log_b, log_s = BivariateWeibull._log_terms(x, y, theta)
        s_alpha = math.exp(alpha * log_s)
        return (
            -s_alpha
            + math.log(theta.gamma1) + math.log(theta.gamma2)
            + log_a + log_b - math.log(x) - math.log(y)
            + (alpha - 2.0) * log_s
            + math.log(s_alpha + (1.0 - alpha) / alpha)
        )

    @staticmethod
    def joint_density(x: float, y: float, theta: ModelParams) -> float:
        """f_XY(x, y) = ∂²S/∂x∂y"""
        return math.exp(BivariateWeibull.log_joint_density(x, y, theta))

    @staticmethod
    def log_marginal_density_y(y: float, theta: ModelParams) -> float:
        y = _check_positive_time(y, "y", theta.gamma2)
        return WeibullMargin.log_density(y, theta.lambda2, theta.gamma2)

    @staticmethod
    def marginal_density_y(y: float, theta: ModelParams) -> float:
        """Y 의 주변밀도 (Weibull(λ2, γ2))"""
        return math.exp(BivariateWeibull.log_marginal_density_y(y, theta))

    @staticmethod
    def _tail_ratio(t: float, theta: ModelParams, spec: Optional[QuadratureSpec]) -> tuple:
        """(log S(t,t), Pr(t < X < Y) / S(t,t))"""
        t = _check_time(t, "t")
        log_s_tt = BivariateWeibull.log_joint_survival(t, t, theta)

        # [∂S/∂y]_{x=y} 를 S(t,t) 로 나눈 값: Pr(t < Y < X) / S(t,t) 의 피적분함수
        def integrand(y: float) -> float:
            return math.exp(BivariateWeibull.log_neg_dS_dy(y, y, theta) - log_s_tt)

        def x_first_integrand(x: float) -> float:
            return math.exp(BivariateWeibull.log_neg_dS_dx(x, x, theta) - log_s_tt)

        scale = math.sqrt(theta.lambda1 * theta.lambda2)
        ratio = 1.0 - integrate_semi_infinite(integrand, t, spec, scale=scale)
        if ratio < CANCELLATION_RATIO:
            ratio = integrate_semi_infinite(x_first_integrand, t, spec, scale=scale)

        s_tt = math.exp(log_s_tt)
        if ratio < 0:
            if s_tt * ratio < -CLAMP_TOL:
                raise QuadratureError(f"tail probability {s_tt * ratio:.3e} below 0 at t={t}")
            ratio = 0.0
        elif ratio > 1:
            if s_tt * (ratio - 1.0) > CLAMP_TOL:
                raise QuadratureError(f"tail probability exceeds S(t, t) by {s_tt * (ratio - 1.0):.3e} at t={t}")
            ratio = 1.0
        return log_s_tt, ratio

    @staticmethod
    def log_tail_prob(t: float, theta: ModelParams, spec: Optional[QuadratureSpec] = None) -> float:
        log_s_tt, ratio = BivariateWeibull._tail_ratio(t, theta, spec)
        if ratio == 0:
            return -math.inf
        return log_s_tt + math.log(ratio)

    @staticmethod
    def tail_prob(t: float, theta: ModelParams, spec: Optional[QuadratureSpec] = None) -> float:
        """
        Pr(t < X < Y < ∞) = S(t, t) + ∫_t^∞ [∂S/∂y]_{x=y} dy
        중도절단 시점 t 까지 두 사건 모두 관측되지 않을 확률
        """
        log_s_tt, ratio = BivariateWeibull._tail_ratio(t, theta, spec)
        return math.exp(log_s_tt) * ratio

    @staticmethod
    def tail_prob_by_double_integral(t: float, theta: ModelParams,
                                     spec: Optional[QuadratureSpec] = None) -> float:
        """∫_t^∞ ∫_t^y f_XY(x, y) dx dy 직접 이중적분 (tail_prob 검증용)"""
        t = _check_time(t, "t")
        outer = spec or QuadratureSpec.double()
        inner = outer.tighter(10.0)

        def inner_integral(y: float) -> float:
            if y <= t:
                return 0.0
            return integrate_finite(lambda x: BivariateWeibull.joint_density(x, y, theta), t, y, inner)

        scale = math.sqrt(theta.lambda1 * theta.lambda2)
        return integrate_semi_infinite(inner_integral, t, outer, scale=scale)
