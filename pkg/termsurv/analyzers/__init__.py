from .survival import BivariateWeibull, WeibullMargin
from .moments import MomentsAnalyzer

__all__ = ["BivariateWeibull", "WeibullMargin", "MomentsAnalyzer"]
