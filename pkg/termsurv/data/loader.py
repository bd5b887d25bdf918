"""
CSV 입력, 관측 범주 분류, 정제 규칙

스키마: id,wait_time,survival_time,transplant,dead (UTF-8, 쉼표 구분, 시간 단위는 일)
transplant = 0 인 행의 wait_time 은 무시되며 비워둘 수 있습니다.
"""
import logging
import math
from pathlib import Path
from typing import IO, Iterable, List, Optional, Tuple, Union

import pandas as pd

from ..exceptions import DataError
from ..models.records import Category, CleaningReport, Dataset, DroppedRow, RawSubject, SubjectRecord

logger = logging.getLogger(__name__)

COLUMNS = ["id", "wait_time", "survival_time", "transplant", "dead"]

Source = Union[str, Path, IO[str]]


def _parse_time(value: str, line: int, field: str, required: bool) -> Optional[float]:
    if value == "":
        if required:
            raise DataError("missing value", line=line, field=field)
        return None
    try:
        number = float(value)
    except ValueError:
        raise DataError(f"not a number: '{value}'", line=line, field=field) from None
    if not math.isfinite(number) or number < 0:
        raise DataError(f"time must be a finite nonnegative number, got '{value}'", line=line, field=field)
    return number


def _cell(value: object) -> str:
    return "" if pd.isna(value) else str(value).strip()


def _parse_flag(value: str, line: int, field: str) -> int:
    if value not in ("0", "1"):
        raise DataError(f"flag must be 0 or 1, got '{value}'", line=line, field=field)
    return int(value)


def parse_csv(source: Source) -> List[RawSubject]:
    """CSV 를 RawSubject 목록으로 읽기 (오류는 줄 번호와 필드로 보고)"""
    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False, skipinitialspace=True,
                            skip_blank_lines=False)
    except pd.errors.EmptyDataError:
        raise DataError("no records: empty input") from None
    except pd.errors.ParserError as e:
        raise DataError(f"malformed CSV: {e}") from None

    columns = [str(column).strip() for column in frame.columns]
    if columns != COLUMNS:
        raise DataError(f"header must be '{','.join(COLUMNS)}', got '{','.join(columns)}'", line=1)
    frame.columns = columns

    subjects: List[RawSubject] = []
    seen = {}
    for offset, row in enumerate(frame.itertuples(index=False)):
        # 빈 줄도 행으로 읽으므로 offset + 2 가 실제 줄 번호
        line = offset + 2
        cells = {column: _cell(value) for column, value in zip(COLUMNS, row)}
        if not any(cells.values()):
            continue
        subject_id = cells["id"]
        if not subject_id:
            raise DataError("missing id", line=line, field="id")
        if subject_id in seen:
            raise DataError(f"duplicate id '{subject_id}' (first seen on line {seen[subject_id]})",
                            line=line, field="id")
        seen[subject_id] = line

        transplant = _parse_flag(cells["transplant"], line, "transplant")
        dead = _parse_flag(cells["dead"], line, "dead")
        wait_time = None
        if transplant == 1:
            wait_time = _parse_time(cells["wait_time"], line, "wait_time", required=True)
        survival_time = _parse_time(cells["survival_time"], line, "survival_time", required=True)

        subjects.append(RawSubject(
            id=subject_id,
            wait_time=wait_time,
            survival_time=survival_time,
            transplant=transplant,
            dead=dead,
            line=line,
        ))

    if not subjects:
        raise DataError("no records: header only")
    return subjects


def _drop_reason(subject: RawSubject) -> Optional[str]:
    if subject.survival_time == 0:
        return "y equal to zero"
    if subject.transplant == 1:
        if subject.wait_time is None:
            return "transplant without wait_time"
        if subject.wait_time == 0:
            return "x equal to zero"
        if subject.dead == 1 and subject.wait_time >= subject.survival_time:
            return "transplant not before death (violates termination ordering)"
        if subject.dead == 0 and subject.wait_time > subject.survival_time:
            return "transplant after last follow-up"
    return None


def to_record(subject: RawSubject) -> SubjectRecord:
    """transplant, dead 플래그로 관측 범주 결정"""
    if subject.transplant == 1 and subject.dead == 1:
        return SubjectRecord.both_observed(subject.wait_time, subject.survival_time)
    if subject.transplant == 1:
        return SubjectRecord.a_observed(subject.wait_time, subject.survival_time)
    if subject.dead == 1:
        return SubjectRecord.b_observed(subject.survival_time)
    return SubjectRecord.censored(subject.survival_time)


def classify(subjects: Iterable[RawSubject]) -> Tuple[Dataset, CleaningReport]:
    """RawSubject 를 관측 범주로 분류하고 0 시간 및 순서 위반 행을 제외"""
    subjects = list(subjects)
    records: List[SubjectRecord] = []
    dropped: List[DroppedRow] = []

    for subject in subjects:
        reason = _drop_reason(subject)
        if reason is not None:
            logger.info("행 제외 id=%s: %s", subject.id, reason)
            dropped.append(DroppedRow(id=subject.id, reason=reason))
            continue
        records.append(to_record(subject))

    if not records:
        raise DataError(f"no records left after cleaning ({len(dropped)} dropped)")

    dataset = Dataset(records=tuple(records))
    report = CleaningReport(dropped=dropped, counts=dataset.counts, n_input=len(subjects))
    logger.info("분류 완료: 입력 %d, 제외 %d, 범주 %s", len(subjects), len(dropped), dataset.counts)
    return dataset, report


def load_dataset(source: Source) -> Tuple[Dataset, CleaningReport]:
    return classify(parse_csv(source))


def to_raw_subjects(dataset: Dataset, prefix: str = "s") -> List[RawSubject]:
    """Dataset 을 CSV 스키마의 행으로 되돌리기"""
    subjects = []
    for index, record in enumerate(dataset.records, start=1):
        category = record.category
        transplant = int(category in (Category.BOTH_OBSERVED, Category.A_OBSERVED_B_CENSORED))
        dead = int(category in (Category.BOTH_OBSERVED, Category.B_OBSERVED_NO_A))
        subjects.append(RawSubject(
            id=f"{prefix}{index}",
            wait_time=record.t_x if transplant else None,
            survival_time=record.t_y,
            transplant=transplant,
            dead=dead,
        ))
    return subjects


def _format_time(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def write_csv(dataset: Dataset, target: Optional[Source] = None) -> str:
    """정규 CSV 스키마로 기록하고 텍스트를 반환"""
    frame = pd.DataFrame(
        [
            [s.id, _format_time(s.wait_time), _format_time(s.survival_time), str(s.transplant), str(s.dead)]
            for s in to_raw_subjects(dataset)
        ],
        columns=COLUMNS,
    )
    text = frame.to_csv(index=False, lineterminator="\n")
    if target is not None:
        if isinstance(target, (str, Path)):
            Path(target).write_text(text, encoding="utf-8")
        else:
            target.write(text)
    return text


def from_start_stop(frame: pd.DataFrame) -> List[RawSubject]:
    """
    (id, start, stop, event, transplant) 계수과정 형식을 RawSubject 로 변환
    이식 후 구간의 시작 시점이 대기시간, 마지막 stop 이 생존시간
    """
    required = {"id", "start", "stop", "event", "transplant"}
    missing = required - set(frame.columns)
    if missing:
        raise DataError(f"start/stop frame is missing columns {sorted(missing)}")

    subjects = []
    for subject_id, group in frame.sort_values(["id", "start"]).groupby("id", sort=True):
        transplanted = group[group["transplant"] == 1]
        transplant = int(not transplanted.empty)
        subjects.append(RawSubject(
            id=str(subject_id),
            wait_time=float(transplanted["start"].min()) if transplant else None,
            survival_time=float(group["stop"].max()),
            transplant=transplant,
            dead=int(group["event"].max()),
        ))
    return subjects


def load_stanford() -> List[RawSubject]:
    """lifelines 에 포함된 Stanford 심장이식 자료"""
    try:
        from lifelines.datasets import load_stanford_heart_transplants
    except ImportError as e:
        raise DataError("the Stanford heart transplant data requires the 'lifelines' package") from e
    return from_start_stop(load_stanford_heart_transplants())

