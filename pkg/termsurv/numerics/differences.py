import math
from typing import Callable, Sequence

import numpy as np

from ..exceptions import DomainError

_EPS = np.finfo(float).eps
GRAD_STEP = _EPS ** (1.0 / 3.0)
HESS_STEP = _EPS ** 0.25


def _evaluate(f: Callable[[np.ndarray], float], x: np.ndarray, coordinate: int) -> float:
    value = float(f(x))
    if not math.isfinite(value):
        raise DomainError(f"non-finite function value {value} while differencing coordinate {coordinate}")
    return value


def _steps(x: np.ndarray, base: float) -> np.ndarray:
    return base * np.maximum(1.0, np.abs(x))


def central_diff_grad(f: Callable[[np.ndarray], float], x: Sequence[float]) -> np.ndarray:
    """중앙차분 기울기, h_i = cbrt(eps)·max(1, |x_i|)"""
    x = np.asarray(x, dtype=float)
    h = _steps(x, GRAD_STEP)
    grad = np.zeros_like(x)

    for i in range(x.size):
        x_plus = x.copy()
        x_minus = x.copy()
        x_plus[i] += h[i]
        x_minus[i] -= h[i]
        grad[i] = (_evaluate(f, x_plus, i) - _evaluate(f, x_minus, i)) / (2.0 * h[i])

    return grad


def central_diff_hessian(f: Callable[[np.ndarray], float], x: Sequence[float]) -> np.ndarray:
    """중앙차분 헤시안, h_i = eps^(1/4)·max(1, |x_i|), (H + Hᵀ)/2 로 대칭화"""
    x = np.asarray(x, dtype=float)
    n = x.size
    h = _steps(x, HESS_STEP)
    f0 = _evaluate(f, x, 0)
    hessian = np.zeros((n, n))

    for i in range(n):
        x_plus = x.copy()
        x_minus = x.copy()
        x_plus[i] += h[i]
        x_minus[i] -= h[i]
        hessian[i, i] = (_evaluate(f, x_plus, i) - 2.0 * f0 + _evaluate(f, x_minus, i)) / (h[i] ** 2)

        for j in range(i + 1, n):
            x_pp = x.copy()
            x_pm = x.copy()
            x_mp = x.copy()
            x_mm = x.copy()
            x_pp[i] += h[i]; x_pp[j] += h[j]
            x_pm[i] += h[i]; x_pm[j] -= h[j]
            x_mp[i] -= h[i]; x_mp[j] += h[j]
            x_mm[i] -= h[i]; x_mm[j] -= h[j]
            hessian[i, j] = (
                _evaluate(f, x_pp, i) - _evaluate(f, x_pm, i)
                - _evaluate(f, x_mp, j) + _evaluate(f, x_mm, j)
            ) / (4.0 * h[i] * h[j])
            hessian[j, i] = hessian[i, j]

    return (hessian + hessian.T) / 2.0
