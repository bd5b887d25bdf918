from .transforms import from_unconstrained, to_unconstrained
from .fitter import (
    FitConfig,
    default_init,
    fit,
    fit_univariate_weibull,
    independence_test,
    observed_information,
    standard_errors,
)

__all__ = [
    "FitConfig",
    "default_init",
    "fit",
    "fit_univariate_weibull",
    "from_unconstrained",
    "independence_test",
    "observed_information",
    "standard_errors",
    "to_unconstrained",
]
