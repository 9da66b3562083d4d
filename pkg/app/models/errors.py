"""도메인 예외 계층.

라우터는 ToricError / ValueError 를 400 으로, 그 밖의 예외를 500 으로 변환한다.
"""
from typing import List, Optional


class ToricError(Exception):
    """모든 도메인 예외의 기반 클래스."""


class FanValidationError(ToricError, ValueError):
    """팬 구조 오류 (뿔이 아님, 중복 광선, 지지 밖의 벡터 등)."""


class FanDocumentError(ToricError, ValueError):
    """팬 문서 파싱 오류. field 에 문제 위치를 기록."""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class CurveConditionError(ToricError, ValueError):
    """곡선 존재 조건 (1)–(3) 위반."""

    def __init__(self, condition: int, index: Optional[int], message: str):
        self.condition = condition
        self.index = index
        super().__init__(message)


class HypothesisError(ToricError, ValueError):
    """소수정 구성의 가정 위반. hypothesis 에 위반된 가정 이름."""

    def __init__(self, hypothesis: str, message: str):
        self.hypothesis = hypothesis
        super().__init__(message)


class ScheduleExhaustedError(ToricError):
    """매개변수 탐색 단계를 모두 소진."""

    def __init__(self, message: str, attempts: Optional[List[str]] = None):
        self.attempts = attempts or []
        super().__init__(message)


class NotExtremalError(ToricError, ValueError):
    pass


class NotStronglyConvexError(ToricError, ValueError):
    pass


class DimensionMismatchError(ToricError, ValueError):
    pass
