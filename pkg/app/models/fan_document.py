"""팬 문서(JSON) Pydantic 모델."""
from pydantic import BaseModel, Field
from typing import Dict, List, Literal, Optional


class FanDocument(BaseModel):
    """{"format_version":"1","rank":n,"rays":[[...]],"max_cones":[[...]],"name":...}"""
    format_version: Literal["1"] = "1"
    rank: int = Field(..., ge=0)
    rays: List[List[int]]
    max_cones: List[List[int]]
    name: Optional[str] = None
    divisor_basis: Optional[List[int]] = None  # N¹ 좌표 기저로 쓸 광선 인덱스 (0-based)


class FunctionalDocument(BaseModel):
    cone: List[int]
    m: List[str]


class CertificateDocument(BaseModel):
    """지지 함수 인증서. 유리수는 "p/q" 문자열."""
    heights: List[str]
    functionals: List[FunctionalDocument]
    margin: str


class AttemptDocument(BaseModel):
    step: int
    p: str
    q: str
    epsilon_base: Optional[int] = None
    outcome: str


class SmallModificationDocument(BaseModel):
    """사영적 소수정 기록: 원본/결과 팬, τ, S, 매개변수 (p, q, ε_j), 인증서."""
    format_version: Literal["1"] = "1"
    source: FanDocument
    target: FanDocument
    tau: List[int]
    rays_s: List[int]
    p: str
    q: str
    epsilons: Dict[int, str]
    face_fan: FanDocument
    face_fan_rays: List[int]
    subdivisions: List[int] = Field(default_factory=list)
    attempts: List[AttemptDocument] = Field(default_factory=list)
    certificate: CertificateDocument
