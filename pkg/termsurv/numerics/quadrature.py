import logging
import math
from typing import Callable, Optional

from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate, special

from ..config import settings
from ..exceptions import DomainError, QuadratureError

logger = logging.getLogger(__name__)

# QUADPACK ier=2 (반올림 오차) 는 추정 오차가 허용치의 이 배수 이내일 때만 수용
_ROUNDOFF_SLACK = 1e4


class QuadratureSpec(BaseModel):
    """적응형 Gauss-Kronrod 적분 허용오차"""
    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default_factory=lambda: settings.QUAD_REL_TOL, gt=0)
    abs_tol: float = Field(default_factory=lambda: settings.QUAD_ABS_TOL, ge=0)
    max_subdivisions: int = Field(default_factory=lambda: settings.QUAD_MAX_SUBDIVISIONS, ge=1)

    @classmethod
    def double(cls) -> "QuadratureSpec":
        """이중 적분용 (느슨한) 허용오차"""
        return cls(rel_tol=settings.DOUBLE_QUAD_REL_TOL, abs_tol=settings.DOUBLE_QUAD_ABS_TOL)

    def tighter(self, factor: float = 10.0) -> "QuadratureSpec":
        """내부 적분용으로 factor 배 엄격한 허용오차"""
        return QuadratureSpec(
            rel_tol=self.rel_tol / factor,
            abs_tol=self.abs_tol / factor,
            max_subdivisions=self.max_subdivisions,
        )


def gamma_fn(z: float) -> float:
    """감마 함수 Γ(z), z > 0"""
    if not z > 0 or not math.isfinite(z):
        raise DomainError(f"gamma_fn requires finite z > 0, got {z}")
    return float(special.gamma(z))


def integrate_finite(f: Callable[[float], float], a: float, b: float,
                     spec: Optional[QuadratureSpec] = None) -> float:
    """유한 구간 [a, b] 적응형 Gauss-Kronrod 적분"""
    spec = spec or QuadratureSpec()
    if a > b:
        raise DomainError(f"integrate_finite requires a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0

    result = integrate.quad(
        f, a, b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    value, abserr = float(result[0]), float(result[1])

    if len(result) == 4:
        message = str(result[3])
        hit_limit = "maximum number of subdivisions" in message
        tolerance = max(spec.abs_tol, spec.rel_tol * abs(value))
        if hit_limit or not math.isfinite(value) or abserr > tolerance * _ROUNDOFF_SLACK:
            raise QuadratureError(
                f"quadrature did not converge on [{a}, {b}]: {message.strip()} "
                f"(estimate={value}, abserr={abserr})"
            )
        logger.warning("quadrature warning accepted on [%s, %s]: abserr=%.3e (tolerance %.3e)",
                       a, b, abserr, tolerance)

    return value


def integrate_semi_infinite(f: Callable[[float], float], a: float,
                            spec: Optional[QuadratureSpec] = None,
                            scale: float = 1.0) -> float:
    """반무한 구간 [a, ∞) 적분, y = a + scale·u/(1-u) 치환 후 유한 적분"""
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale}")

    def mapped(u: float) -> float:
        if u >= 1.0:
            return 0.0
        one_minus = 1.0 - u
        y = a + scale * u / one_minus
        if not math.isfinite(y):
            return 0.0
        value = f(y)
        if value == 0.0:
            return 0.0
        return value * scale / (one_minus * one_minus)

    return integrate_finite(mapped, 0.0, 1.0, spec)
