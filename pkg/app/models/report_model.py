"""CLI / API 공용 요청·응답 Pydantic 모델.

유리수는 모두 "p/q" 문자열 (정수는 "p") 로 직렬화한다.
"""
from pydantic import BaseModel, Field
from typing import Dict, List, Optional

from app.models.fan_document import FanDocument

RationalVector = List[str]


class FanRequest(BaseModel):
    """내장 팬 이름(또는 파일 경로) 혹은 인라인 팬 문서."""
    fan: Optional[str] = None
    document: Optional[FanDocument] = None
    strict: Optional[bool] = None  # None 이면 STRICT_FAN_PARSING 설정을 따른다


class LevelRequest(FanRequest):
    k: int


class DivisorRequest(FanRequest):
    divisor: List[str]
    k: Optional[int] = None  # 주어지면 dim B(D) < k 판정까지 수행


class WitnessRequest(FanRequest):
    tau: List[int] = Field(default_factory=list)
    curve_class: List[str]


class SmallModRequest(FanRequest):
    tau: List[int]
    rays: List[int]


class DecomposeRequest(FanRequest):
    ell: int
    curve_class: List[str]


class FanSummary(BaseModel):
    """내장 팬 목록 항목"""
    name: str
    rank: int
    num_rays: int
    num_max_cones: int


class ExamplesResponse(BaseModel):
    fans: List[FanSummary]


class ValidationResponse(BaseModel):
    """팬 검증 결과"""
    fan: Optional[str] = None
    rank: int
    num_rays: int
    num_max_cones: int
    well_formed: bool = True
    rays_primitive: bool
    simplicial: Optional[bool] = None
    compatible: Optional[bool] = None
    complete: Optional[bool] = None
    ok: bool
    failures: List[str] = Field(default_factory=list)
    unchecked: List[str] = Field(default_factory=list)
    offending: Dict[str, List] = Field(default_factory=dict)


class ConeResponse(BaseModel):
    """이중 기술 뿔. coordinates 는 "N1" (인자류 좌표) 또는 "R^r" (곡선 관계 공간)."""
    label: str
    coordinates: str
    ambient_dim: int
    dimension: int
    strongly_convex: bool
    rays: List[RationalVector]
    lineality: List[RationalVector] = Field(default_factory=list)
    inequalities: List[RationalVector] = Field(default_factory=list)
    equations: List[RationalVector] = Field(default_factory=list)


class WallClass(BaseModel):
    wall: List[int]
    curve_class: RationalVector


class ClassesResponse(BaseModel):
    """N¹ / N₁ 요약"""
    fan: Optional[str] = None
    picard_rank: int
    basis_indices: List[int]
    basis_one_based: Optional[List[int]] = None
    complement_indices: List[int]
    divisor_generators: List[RationalVector]
    curve_basis: List[RationalVector]
    walls: List[WallClass]
    projective: bool
    projectivity_margin: Optional[str] = None


class BaseLocusResponse(BaseModel):
    """안정 기저 궤적. dimension 이 null 이면 빈 궤적."""
    fan: Optional[str] = None
    divisor: RationalVector
    member_cones: List[List[int]]
    member_cones_one_based: Optional[List[List[int]]] = None
    dimension: Optional[int] = None
    k: Optional[int] = None
    dimension_less_than_k: Optional[bool] = None
    subvariety_cone: Optional[List[int]] = None
    swept_cone: Optional[List[int]] = None
    negative_curve: Optional[RationalVector] = None
    intersection: Optional[str] = None


class PolytopeResponse(BaseModel):
    """P_D 와 그 격자점 (정수 인자일 때)."""
    divisor: RationalVector
    empty: bool
    dimension: int
    vertices: List[RationalVector]
    facets: List[RationalVector]  # ⟨a, u⟩ + b ≥ 0 을 (a..., b) 로
    lattice_points: Optional[List[List[int]]] = None


class WitnessStep(BaseModel):
    """재귀 한 단계: fan 위 τ 에서의 목표류."""
    depth: int
    fan: Optional[str] = None
    tau: List[int]
    target: RationalVector
    scale: int
    kind: str  # "sweep" | "subvariety"
    exponents: Optional[List[int]] = None
    markers: Optional[Dict[str, int]] = None
    multipliers: Optional[Dict[str, int]] = None


class WitnessResponse(BaseModel):
    target: RationalVector
    tau: List[int]
    swept_dimension: int
    depth: int
    recomputed: RationalVector
    class_matches_target: bool
    steps: List[WitnessStep]


class ScheduleAttemptReport(BaseModel):
    step: int
    p: str
    q: str
    epsilon_base: Optional[int] = None
    outcome: str


class CertificateReport(BaseModel):
    heights: RationalVector
    margin: str
    verified: bool


class SmallModResponse(BaseModel):
    source: Optional[str] = None
    tau: List[int]
    rays_s: List[int]
    trivial: bool
    p: str
    q: str
    epsilons: Dict[str, str]
    subdivisions: List[int]
    target: FanDocument
    target_one_based: Optional[List[List[int]]] = None
    certificate: CertificateReport
    attempts: List[ScheduleAttemptReport]
    problems: List[str] = Field(default_factory=list)


class DecompositionResponse(BaseModel):
    curve_class: RationalVector
    ell: int
    sigma: List[int]
    tau: List[int]
    tau_one_based: Optional[List[int]] = None
    swept_dimension: int
    modification: Optional[SmallModResponse] = None
    witness: WitnessResponse


class ModificationCheckReport(BaseModel):
    tau: List[int]
    rays_s: List[int]
    trivial: bool
    max_cones: List[List[int]]
    mov_generators_ok: bool
    amp1_invariant: Optional[bool] = None


class TheoremResponse(BaseModel):
    """Amp^(n−k)∨ = Σ Mov_k(X, X†) 검증 보고서"""
    fan: Optional[str] = None
    k: int
    verdict: str
    forward_ok: bool
    reverse_ok: bool
    natural_inclusions: bool
    extremal_rays: List[RationalVector]
    decompositions: List[DecompositionResponse]
    failures: List[str]
    modifications: List[ModificationCheckReport]
    strict_inclusion_rays: List[RationalVector]
