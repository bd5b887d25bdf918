from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, model_validator

from .params import ModelParams
from .records import CleaningReport


class FitResult(BaseModel):
    """최대우도 적합 결과"""
    model_config = ConfigDict(frozen=True)

    estimate: ModelParams
    std_errors: Optional[Tuple[float, float, float, float, float]] = None
    loglik: FiniteFloat
    converged: bool
    n_iter: int
    hessian_ok: bool
    # 기울기 계산에 실패하면 None (사유는 diagnostics["gradient_error"])
    gradient_max_norm: Optional[FiniteFloat] = None
    non_identified: List[str] = Field(default_factory=list)
    restart_logliks: List[Optional[FiniteFloat]] = Field(default_factory=list)
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
    independence_fit: Optional["FitResult"] = None

    @model_validator(mode="after")
    def _std_errors_need_hessian(self) -> "FitResult":
        if self.std_errors is not None and not self.hessian_ok:
            raise ValueError("std_errors present without a positive-definite Hessian")
        return self


class MomentsReport(BaseModel):
    """E(X), E(Y), Var(X), Var(Y), Corr(X, Y)"""
    model_config = ConfigDict(frozen=True)

    params: ModelParams
    mean_x: float
    mean_y: float
    var_x: float = Field(gt=0)
    var_y: float = Field(gt=0)
    cross_moment: float
    corr_xy: float = Field(ge=-1, le=1)
    corr_closed_form: Optional[float] = None
    kendall_tau: float


class VerificationReport(BaseModel):
    """꼬리확률 교차 검증 결과 (적분, 이중적분, 몬테카를로)"""
    model_config = ConfigDict(frozen=True)

    params: ModelParams
    t: float
    tail_prob: float
    double_quadrature: float
    mc_estimate: Optional[float] = None
    mc_std_error: Optional[float] = None
    draws: int
    seed: int
    quadrature_pass: bool
    mc_pass: bool
    passed: bool
    notes: List[str] = Field(default_factory=list)


class RunReport(BaseModel):
    """CLI 실행 보고서"""
    model_config = ConfigDict(frozen=True)

    command: str
    input_digest: Optional[str] = None
    version: str
    elapsed_seconds: float
    seed: Optional[int] = None
    counts: Optional[Dict[str, int]] = None
    cleaning: Optional[CleaningReport] = None
    fit: Optional[FitResult] = None
    independence_lrt: Optional[Dict[str, float]] = None
    moments: Optional[MomentsReport] = None
    verification: Optional[VerificationReport] = None
