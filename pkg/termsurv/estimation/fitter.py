import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import optimize, stats

from ..config import settings
from ..exceptions import DomainError, EstimationError, TermSurvError
from ..likelihoods.lawless import loglik_univariate_weibull
from ..likelihoods.termination import CensoredFactor, RFactor, TerminationLikelihood
from ..models.params import PARAM_NAMES, ModelParams
from ..models.records import Category, Dataset
from ..models.reports import FitResult
from ..numerics.differences import central_diff_grad, central_diff_hessian
from ..numerics.quadrature import QuadratureSpec
from .transforms import (
    from_unconstrained,
    margins_from_unconstrained,
    margins_to_unconstrained,
    to_unconstrained,
)

logger = logging.getLogger(__name__)

# 초기 단체(simplex) 의 변환 공간 변 길이
SIMPLEX_STEP = 0.25
# 비식별 판정: ±10% 섭동에도 로그우도 변화가 이보다 작으면 평탄
FLAT_TOL = 1e-8
FLAT_PERTURBATION = 0.1
DEFAULT_INIT_ALPHA = 0.8


class FitConfig(BaseModel):
    """최대우도 적합 설정"""
    model_config = ConfigDict(frozen=True)

    init: Optional[ModelParams] = None
    max_iter: int = Field(default_factory=lambda: settings.FIT_MAX_ITER, ge=1)
    f_tol: float = Field(default_factory=lambda: settings.FIT_F_TOL, gt=0)
    x_tol: float = Field(default_factory=lambda: settings.FIT_X_TOL, gt=0)
    restarts: int = Field(default_factory=lambda: settings.FIT_RESTARTS, ge=1)
    jitter: float = Field(default_factory=lambda: settings.FIT_JITTER, ge=0)
    seed: int = Field(default_factory=lambda: settings.FIT_SEED)
    grad_tol: float = Field(default=1e-4, gt=0)
    alpha_boundary: float = Field(default_factory=lambda: settings.ALPHA_BOUNDARY, gt=0)
    std_errors: bool = True
    censored_factor: CensoredFactor = "tail"
    r_factor: RFactor = "marginal"

    def likelihood(self, spec: Optional[QuadratureSpec] = None) -> TerminationLikelihood:
        return TerminationLikelihood(spec, self.censored_factor, self.r_factor)


def default_init(data: Dataset) -> ModelParams:
    """α = 0.8, γ = 1, λ = 중앙값 / ln 2 (지수분포 중앙값 관계)"""
    x_times = [r.t_x for r in data.records
               if r.category in (Category.BOTH_OBSERVED, Category.A_OBSERVED_B_CENSORED)]
    y_times = [r.t_y for r in data.records]
    if not x_times:
        x_times = y_times
    return ModelParams(
        alpha=DEFAULT_INIT_ALPHA,
        lambda1=float(np.median(x_times)) / math.log(2.0),
        gamma1=1.0,
        lambda2=float(np.median(y_times)) / math.log(2.0),
        gamma2=1.0,
    )


def _safe_objective(likelihood: TerminationLikelihood, data: Dataset,
                    to_params: Callable[[np.ndarray], ModelParams]) -> Callable[[np.ndarray], float]:
    def objective(v: np.ndarray) -> float:
        try:
            return -likelihood.loglik(data, to_params(v))
        except (TermSurvError, OverflowError, ValueError) as e:
            logger.debug("likelihood evaluation failed at %s: %s", v, e)
            return math.inf
    return objective


def _nelder_mead(objective: Callable[[np.ndarray], float], v0: np.ndarray, cfg: FitConfig):
    simplex = np.vstack([v0] + [v0 + SIMPLEX_STEP * e for e in np.eye(v0.size)])
    return optimize.minimize(
        objective,
        v0,
        method="Nelder-Mead",
        options={
            "maxiter": cfg.max_iter,
            "maxfev": cfg.max_iter * 2,
            "xatol": cfg.x_tol,
            "fatol": cfg.f_tol,
            "initial_simplex": simplex,
        },
    )


def _multistart(objective: Callable[[np.ndarray], float], v0: np.ndarray,
                cfg: FitConfig) -> Tuple[np.ndarray, float, bool, int, List[Optional[float]]]:
    """지터를 준 재시작 중 최대 로그우도 (동률이면 가장 앞선 재시작)"""
    rng = np.random.default_rng(cfg.seed)
    starts = [v0] + [v0 + rng.uniform(-cfg.jitter, cfg.jitter, size=v0.size)
                     for _ in range(cfg.restarts - 1)]

    best = None
    restart_values: List[Optional[float]] = []
    total_iter = 0
    for index, start in enumerate(starts):
        result = _nelder_mead(objective, start, cfg)
        total_iter += int(result.nit)
        # 유한한 우도를 찾지 못한 재시작은 None
        restart_values.append(-float(result.fun) if math.isfinite(result.fun) else None)
        logger.info("재시작 %d/%d: loglik=%.6f, nit=%d, success=%s",
                    index + 1, len(starts), -result.fun, result.nit, result.success)
        if best is None or result.fun < best.fun:
            best = result

    # 최적점에서 새 단체로 한 번 더 다듬되 우도가 나빠지면 버림
    polish = _nelder_mead(objective, np.asarray(best.x), cfg)
    total_iter += int(polish.nit)
    if polish.fun <= best.fun:
        best = polish
    if not math.isfinite(best.fun):
        raise EstimationError("no restart reached a finite likelihood")

    return np.asarray(best.x), -float(best.fun), bool(best.success), total_iter, restart_values


def observed_information(data: Dataset, theta_hat: ModelParams,
                         spec: Optional[QuadratureSpec] = None,
                         censored_factor: CensoredFactor = "tail",
                         fixed: Sequence[str] = (),
                         r_factor: RFactor = "marginal") -> np.ndarray:
    """원래 모수 척도에서 음의 로그우도의 중앙차분 헤시안 (fixed 에 든 모수는 제외)"""
    likelihood = TerminationLikelihood(spec, censored_factor, r_factor)
    point = theta_hat.as_array()
    free = [i for i, name in enumerate(PARAM_NAMES) if name not in fixed]

    def negative_loglik(values: np.ndarray) -> float:
        full = point.copy()
        full[free] = values
        try:
            return -likelihood.loglik(data, ModelParams.from_sequence(full))
        except (TermSurvError, OverflowError):
            return math.nan

    return central_diff_hessian(negative_loglik, point[free])


def standard_errors(data: Dataset, theta_hat: ModelParams,
                    spec: Optional[QuadratureSpec] = None,
                    censored_factor: CensoredFactor = "tail",
                    fixed: Sequence[str] = (),
                    r_factor: RFactor = "marginal") -> Tuple[Optional[Tuple[float, ...]], bool]:
    """
    헤시안 역행렬 대각의 제곱근 (고정 모수는 0)
    헤시안이 양정치가 아니면 (None, False)
    """
    try:
        hessian = observed_information(data, theta_hat, spec, censored_factor, fixed, r_factor)
        np.linalg.cholesky(hessian)
        covariance = np.linalg.inv(hessian)
    except (DomainError, np.linalg.LinAlgError) as e:
        logger.warning("헤시안이 양정치가 아닙니다: %s", e)
        return None, False

    variances = np.diag(covariance)
    if np.any(variances <= 0) or not np.all(np.isfinite(variances)):
        return None, False

    free_errors = iter(np.sqrt(variances))
    errors = tuple(0.0 if name in fixed else float(next(free_errors)) for name in PARAM_NAMES)
    return errors, True


def _non_identified(objective: Callable[[np.ndarray], float], v_hat: np.ndarray,
                    names: Sequence[str]) -> List[str]:
    f_hat = objective(v_hat)
    flat = []
    for i, name in enumerate(names):
        changes = []
        for sign in (1.0, -1.0):
            v = v_hat.copy()
            v[i] += sign * FLAT_PERTURBATION
            changes.append(abs(objective(v) - f_hat))
        if max(changes) < FLAT_TOL:
            flat.append(name)
    return flat


def _fit_fixed_alpha(data: Dataset, cfg: FitConfig, start: ModelParams,
                     spec: Optional[QuadratureSpec]) -> FitResult:
    """α = 1 (독립) 로 고정한 네 모수 적합"""
    likelihood = cfg.likelihood(spec)
    objective = _safe_objective(likelihood, data, margins_from_unconstrained)
    v0 = margins_to_unconstrained(start)
    v_hat, loglik, success, n_iter, restart_values = _multistart(objective, v0, cfg)
    estimate = margins_from_unconstrained(v_hat)

    diagnostics: Dict[str, object] = {"alpha_fixed": 1.0}
    grad_norm: Optional[float] = None
    try:
        grad = central_diff_grad(lambda v: -objective(v), v_hat)
        grad_norm = float(np.max(np.abs(grad)))
    except DomainError as e:
        logger.warning("기울기 계산 실패: %s", e)
        diagnostics["gradient_error"] = str(e)
    errors, ok = (None, False)
    if cfg.std_errors:
        errors, ok = standard_errors(data, estimate, spec, cfg.censored_factor,
                                     fixed=("alpha",), r_factor=cfg.r_factor)

    return FitResult(
        estimate=estimate,
        std_errors=errors,
        loglik=loglik,
        converged=success and grad_norm is not None and grad_norm <= cfg.grad_tol,
        n_iter=n_iter,
        hessian_ok=ok,
        gradient_max_norm=grad_norm,
        restart_logliks=restart_values,
        diagnostics=diagnostics,
    )


def fit(data: Dataset, cfg: Optional[FitConfig] = None, spec: Optional[QuadratureSpec] = None) -> FitResult:
    """Nelder-Mead 다중 시작으로 종결 사건 우도를 최대화"""
    cfg = cfg or FitConfig()
    likelihood = cfg.likelihood(spec)
    init = cfg.init or default_init(data)
    if init.alpha >= 1.0:
        init = init.replace(alpha=1.0 - 1e-8)

    try:
        init_loglik = likelihood.loglik(data, init)
    except TermSurvError as e:
        raise EstimationError(f"likelihood evaluation failed at the initial point {init}: {e}") from e
    logger.info("적합 시작: n=%d, counts=%s, init=%s, loglik=%.6f",
                data.n, data.counts, init.as_array().round(6).tolist(), init_loglik)

    objective = _safe_objective(likelihood, data, from_unconstrained)
    v_hat, loglik, success, n_iter, restart_values = _multistart(objective, to_unconstrained(init), cfg)
    estimate = from_unconstrained(v_hat)

    diagnostics: Dict[str, object] = {"init": init.as_array().tolist(), "init_loglik": init_loglik}
    grad_norm: Optional[float] = None
    try:
        grad = central_diff_grad(lambda v: -objective(v), v_hat)
        grad_norm = float(np.max(np.abs(grad)))
    except DomainError as e:
        logger.warning("기울기 계산 실패: %s", e)
        diagnostics["gradient_error"] = str(e)
    converged = success and grad_norm is not None and grad_norm <= cfg.grad_tol

    non_identified = _non_identified(objective, v_hat, PARAM_NAMES)
    if non_identified:
        logger.warning("평탄한 우도, 식별되지 않는 모수: %s", non_identified)

    errors, hessian_ok = (None, False)
    if cfg.std_errors and not non_identified:
        errors, hessian_ok = standard_errors(data, estimate, spec, cfg.censored_factor,
                                             r_factor=cfg.r_factor)

    independence_fit = None
    if estimate.alpha > 1.0 - cfg.alpha_boundary:
        logger.info("α 추정값 %.8f 가 경계 근처이므로 α = 1 로 재적합", estimate.alpha)
        diagnostics["alpha_at_boundary"] = True
        independence_fit = _fit_fixed_alpha(data, cfg, estimate, spec)

    result = FitResult(
        estimate=estimate,
        std_errors=errors,
        loglik=loglik,
        converged=converged,
        n_iter=n_iter,
        hessian_ok=hessian_ok,
        gradient_max_norm=grad_norm,
        non_identified=non_identified,
        restart_logliks=restart_values,
        diagnostics=diagnostics,
        independence_fit=independence_fit,
    )
    logger.info("적합 완료: loglik=%.6f, converged=%s, estimate=%s",
                loglik, converged, estimate.as_array().round(6).tolist())
    return result


def independence_test(data: Dataset, result: FitResult,
                      spec: Optional[QuadratureSpec] = None,
                      cfg: Optional[FitConfig] = None) -> Dict[str, float]:
    """
    H0: α = 1 에 대한 우도비 검정
    α = 1 이 모수공간 경계이므로 p 값은 ½·χ²₁ 혼합
    """
    cfg = cfg or FitConfig(std_errors=False)
    null_fit = result.independence_fit or _fit_fixed_alpha(
        data, cfg.model_copy(update={"std_errors": False}), result.estimate, spec
    )
    statistic = max(2.0 * (result.loglik - null_fit.loglik), 0.0)
    p_value = 0.5 * float(stats.chi2.sf(statistic, df=1)) if statistic > 0 else 1.0
    return {
        "statistic": statistic,
        "p_value": p_value,
        "loglik_full": result.loglik,
        "loglik_independent": null_fit.loglik,
    }


def fit_univariate_weibull(times: Sequence[float], events: Sequence[bool],
                           cfg: Optional[FitConfig] = None) -> Tuple[float, float, float]:
    """중도절단 단변량 Weibull 최대우도 (λ, γ, loglik)"""
    cfg = cfg or FitConfig()
    times = np.asarray(times, dtype=float)
    events = np.asarray(events, dtype=bool)
    if times.size == 0 or not events.any():
        raise EstimationError("univariate Weibull fit needs at least one observed event")

    def objective(v: np.ndarray) -> float:
        lam, gamma = np.exp(np.clip(v, -700, 700))
        try:
            return -loglik_univariate_weibull(times, events, lam, gamma)
        except (DomainError, OverflowError):
            return math.inf

    v0 = np.array([math.log(float(np.mean(times))), 0.0])
    result = _nelder_mead(objective, v0, cfg)
    result = _nelder_mead(objective, np.asarray(result.x), cfg)
    lam, gamma = np.exp(result.x)
    return float(lam), float(gamma), -float(result.fun)
