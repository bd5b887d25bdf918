from typing import Optional


class TermSurvError(Exception):
    """라이브러리 공통 예외"""


class DomainError(TermSurvError, ValueError):
    """인자가 정의역을 벗어남 (음수 시간, 잘못된 모수, 원점 특이점 등)"""


class QuadratureError(TermSurvError, ArithmeticError):
    """적분 비수렴 또는 확률 범위 이탈"""


class LikelihoodError(TermSurvError):
    """유한하지 않은 로그우도 기여"""

    def __init__(self, message: str, record_index: Optional[int] = None):
        self.record_index = record_index
        if record_index is not None:
            message = f"{message} (record {record_index})"
        super().__init__(message)


class DataError(TermSurvError):
    """CSV 입력 및 분류 오류"""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field {field}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


class EstimationError(TermSurvError):
    """초기값에서 우도 평가 실패"""
