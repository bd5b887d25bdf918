from .quadrature import QuadratureSpec, gamma_fn, integrate_finite, integrate_semi_infinite
from .differences import central_diff_grad, central_diff_hessian

__all__ = [
    "QuadratureSpec",
    "gamma_fn",
    "integrate_finite",
    "integrate_semi_infinite",
    "central_diff_grad",
    "central_diff_hessian",
]
