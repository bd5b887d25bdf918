from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..exceptions import DomainError

PARAM_NAMES: Tuple[str, ...] = ("alpha", "lambda1", "gamma1", "lambda2", "gamma2")


class ModelParams(BaseModel):
    """이변량 Weibull 모수 (α, λ1, γ1, λ2, γ2)"""
    model_config = ConfigDict(frozen=True)

    # 0 < α ≤ 1, α = 1 이면 독립
    alpha: float = Field(gt=0, le=1)
    lambda1: float = Field(gt=0)
    gamma1: float = Field(gt=0)
    lambda2: float = Field(gt=0)
    gamma2: float = Field(gt=0)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> "ModelParams":
        """(α, λ1, γ1, λ2, γ2) 순서의 값으로 생성, 위반 시 DomainError"""
        values = [float(v) for v in values]
        if len(values) != len(PARAM_NAMES):
            raise DomainError(f"expected {len(PARAM_NAMES)} parameters, got {len(values)}")
        try:
            return cls(**dict(zip(PARAM_NAMES, values)))
        except ValidationError as e:
            raise DomainError(f"invalid model parameters {values}: {e.errors()[0]['msg']}") from e

    @classmethod
    def parse(cls, text: str) -> "ModelParams":
        """'α,λ1,γ1,λ2,γ2' 문자열 파싱"""
        try:
            values = [float(part) for part in text.split(",")]
        except ValueError as e:
            raise DomainError(f"cannot parse parameters '{text}'") from e
        return cls.from_sequence(values)

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in PARAM_NAMES], dtype=float)

    def replace(self, **changes: float) -> "ModelParams":
        values = self.model_dump()
        values.update(changes)
        return ModelParams.from_sequence([values[name] for name in PARAM_NAMES])

    @property
    def is_independent(self) -> bool:
        return self.alpha == 1.0


# Stanford 심장이식 자료의 최대우도 추정값
STANFORD_ESTIMATE = ModelParams(
    alpha=0.5596,
    lambda1=35.5837,
    gamma1=0.5587,
    lambda2=385.6361,
    gamma2=0.48300,
)
