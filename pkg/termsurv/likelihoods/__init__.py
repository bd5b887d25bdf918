from .base import BaseLikelihood
from .termination import (
    TerminationLikelihood,
    category_masses,
    category_probabilities,
    log_factor_termination,
    loglik_termination,
)
from .lawless import LawlessLikelihood, loglik_lawless, loglik_univariate_weibull

__all__ = [
    "BaseLikelihood",
    "TerminationLikelihood",
    "LawlessLikelihood",
    "category_masses",
    "category_probabilities",
    "log_factor_termination",
    "loglik_termination",
    "loglik_lawless",
    "loglik_univariate_weibull",
]
