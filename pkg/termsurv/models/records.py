from collections import Counter
from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from ..exceptions import DomainError


class Category(str, Enum):
    """관측 범주 (p, q, r, 중도절단)"""
    BOTH_OBSERVED = "p"
    A_OBSERVED_B_CENSORED = "q"
    B_OBSERVED_NO_A = "r"
    BOTH_CENSORED = "censored"


class SubjectRecord(BaseModel):
    """연구 대상자 한 명의 관측 (시간 단위: 일)"""
    model_config = ConfigDict(frozen=True)

    category: Category
    t_x: float = Field(gt=0)
    t_y: float = Field(gt=0)

    @classmethod
    def both_observed(cls, t_x: float, t_y: float) -> "SubjectRecord":
        return cls(category=Category.BOTH_OBSERVED, t_x=t_x, t_y=t_y)

    @classmethod
    def a_observed(cls, t_x: float, censor_time: float) -> "SubjectRecord":
        return cls(category=Category.A_OBSERVED_B_CENSORED, t_x=t_x, t_y=censor_time)

    @classmethod
    def b_observed(cls, death_time: float) -> "SubjectRecord":
        return cls(category=Category.B_OBSERVED_NO_A, t_x=death_time, t_y=death_time)

    @classmethod
    def censored(cls, censor_time: float) -> "SubjectRecord":
        return cls(category=Category.BOTH_CENSORED, t_x=censor_time, t_y=censor_time)

    def termination_violation(self) -> Optional[str]:
        """종결 사건 관측 체계 위반 사유 (없으면 None)"""
        if self.category is Category.BOTH_OBSERVED and not self.t_x < self.t_y:
            return f"event A must precede fatal event B (t_x={self.t_x}, t_y={self.t_y})"
        if self.category is Category.A_OBSERVED_B_CENSORED and not self.t_x <= self.t_y:
            return f"event A after censoring time (t_x={self.t_x}, t_y={self.t_y})"
        if self.category in (Category.B_OBSERVED_NO_A, Category.BOTH_CENSORED) and self.t_x != self.t_y:
            return f"{self.category.name} requires t_x == t_y (t_x={self.t_x}, t_y={self.t_y})"
        return None

    def check_termination(self) -> None:
        reason = self.termination_violation()
        if reason is not None:
            raise DomainError(reason)


class Dataset(BaseModel):
    """검증된 SubjectRecord 모음"""
    model_config = ConfigDict(frozen=True)

    records: Tuple[SubjectRecord, ...] = Field(min_length=1)
    # termination: 종결 사건 체계, lawless: 두 사건 모두 관측 가능한 체계
    scheme: Literal["termination", "lawless"] = "termination"

    @model_validator(mode="after")
    def _check_scheme(self) -> "Dataset":
        if self.scheme == "termination":
            for index, record in enumerate(self.records):
                reason = record.termination_violation()
                if reason is not None:
                    raise ValueError(f"record {index}: {reason}")
        return self

    @computed_field
    @property
    def counts(self) -> Dict[str, int]:
        tally = Counter(record.category for record in self.records)
        return {category.value: tally.get(category, 0) for category in Category}

    @property
    def n(self) -> int:
        return len(self.records)

    def duplicated(self, times: int = 2) -> "Dataset":
        return Dataset(records=self.records * times, scheme=self.scheme)

    def of_category(self, category: Category) -> List[SubjectRecord]:
        return [record for record in self.records if record.category is category]


class RawSubject(BaseModel):
    """CSV 한 행 (id, wait_time, survival_time, transplant, dead)"""
    model_config = ConfigDict(frozen=True)

    id: str
    wait_time: Optional[float] = Field(default=None, ge=0)
    survival_time: float = Field(ge=0)
    transplant: Literal[0, 1]
    dead: Literal[0, 1]
    line: Optional[int] = None


class DroppedRow(BaseModel):
    id: str
    reason: str


class CleaningReport(BaseModel):
    """분류 과정에서 제외된 행과 범주별 개수"""
    dropped: List[DroppedRow] = Field(default_factory=list)
    counts: Dict[str, int] = Field(default_factory=dict)
    n_input: int = 0
