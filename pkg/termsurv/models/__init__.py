from .params import ModelParams, PARAM_NAMES, STANFORD_ESTIMATE
from .records import Category, SubjectRecord, Dataset, RawSubject, CleaningReport, DroppedRow
from .reports import FitResult, MomentsReport, RunReport, VerificationReport

__all__ = [
    "ModelParams",
    "PARAM_NAMES",
    "STANFORD_ESTIMATE",
    "Category",
    "SubjectRecord",
    "Dataset",
    "RawSubject",
    "CleaningReport",
    "DroppedRow",
    "FitResult",
    "MomentsReport",
    "RunReport",
    "VerificationReport",
]
