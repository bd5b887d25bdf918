import logging
import math
from abc import ABC, abstractmethod
from typing import Dict, List, Optional

from ..exceptions import LikelihoodError, TermSurvError
from ..models.params import ModelParams
from ..models.records import Dataset, SubjectRecord
from ..numerics.quadrature import QuadratureSpec

logger = logging.getLogger(__name__)


class BaseLikelihood(ABC):
    def __init__(self, name: str, spec: Optional[QuadratureSpec] = None):
        self.name = name
        self.spec = spec or QuadratureSpec()

    @abstractmethod
    def log_factor(self, record: SubjectRecord, theta: ModelParams,
                   cache: Optional[Dict[float, float]] = None) -> float:
        """레코드 한 개의 로그우도 기여"""
        pass

    def contributions(self, data: Dataset, theta: ModelParams) -> List[float]:
        """레코드별 로그우도 기여 (한 번의 평가 안에서 중도절단 항은 시점별로 재사용)"""
        cache: Dict[float, float] = {}
        values = []
        for index, record in enumerate(data.records):
            try:
                value = self.log_factor(record, theta, cache)
            except TermSurvError as e:
                note = f"{self.name} likelihood, record {index}: {record}"
                if hasattr(e, "add_note"):
                    e.add_note(note)
                else:  # Python < 3.11
                    e.__notes__ = [*getattr(e, "__notes__", []), note]
                raise
            except OverflowError as e:
                raise LikelihoodError(f"overflow evaluating {record}: {e}", record_index=index) from e
            if not math.isfinite(value):
                raise LikelihoodError(
                    f"non-finite {self.name} log-likelihood contribution {value} for {record}",
                    record_index=index,
                )
            values.append(value)
        return values

    def loglik(self, data: Dataset, theta: ModelParams) -> float:
        """데이터 전체 로그우도 (보정 합산으로 순서에 무관)"""
        return math.fsum(self.contributions(data, theta))
