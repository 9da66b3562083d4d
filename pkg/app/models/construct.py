"""곡선 증거(CurveWitness), 소수정(SmallModification), 사영성 인증서 타입."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from app.models.fan import Cone, Fan, QuotientFanData
from app.utils.ratlinalg import Vector, dot, solve_linear


@dataclass(frozen=True)
class ConditionReport:
    """곡선 존재 조건 (1) Σ a_i v_i = 0, (2) 비인접 광선 계수 0, (3) τ 밖 계수 ≥ 0."""

    ok: bool
    condition: Optional[int] = None
    index: Optional[int] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class SweepAll:
    """τ = 0: φ(z) = Π φ_i(z − λ_i)^{a_i}. markers 는 a_i > 0 인 광선의 λ_i."""

    exponents: Tuple[int, ...]
    markers: Dict[int, int]


@dataclass(frozen=True)
class OnSubvariety:
    """V(τ) 위의 곡선: 몫 팬 위의 내부 증거 (목표값 a_i·m_i)."""

    quotient: QuotientFanData
    inner: "CurveWitness"


@dataclass(frozen=True)
class CurveWitness:
    fan: Fan
    target: Vector  # 원래 목표 류 (유리수 가능)
    scale: int  # scale · target 이 정수 류
    tau: Cone
    body: Union[SweepAll, OnSubvariety]

    @property
    def integral_target(self) -> Tuple[int, ...]:
        return tuple(int(self.scale * a) for a in self.target)

    @property
    def swept_dimension(self) -> int:
        return self.fan.rank - len(self.tau)

    @property
    def depth(self) -> int:
        if isinstance(self.body, SweepAll):
            return 0
        return 1 + self.body.inner.depth

    def recompute(self) -> Vector:
        """아래에서부터 류 재계산 (정수 류). m_i 로 나누고 τ 성분은 관계식에서 푼다."""
        r = self.fan.num_rays
        if isinstance(self.body, SweepAll):
            return tuple(Fraction(e) for e in self.body.exponents)
        q = self.body.quotient
        inner = self.body.inner
        inner_class = tuple(a / inner.scale for a in inner.recompute())
        a = [Fraction(0)] * r
        for i, img in q.ray_map.items():
            a[i] = inner_class[img.index] / img.multiplier
        n = self.fan.rank
        if self.tau:
            partial = [sum((a[i] * self.fan.rays[i][k] for i in range(r)), Fraction(0)) for k in range(n)]
            rows = [[self.fan.rays[t][k] for t in self.tau] for k in range(n)]
            sol = solve_linear(rows, [-p for p in partial], len(self.tau))
            if sol is None:
                raise ValueError("inner witness is inconsistent with the kernel relation")
            for t, value in zip(self.tau, sol):
                a[t] = value
        return tuple(a)

    def class_matches_target(self) -> bool:
        """재계산 류 / scale == target (모든 재귀 단계에서)."""
        recomputed = tuple(x / self.scale for x in self.recompute())
        if recomputed != tuple(self.target):
            return False
        if isinstance(self.body, OnSubvariety):
            return self.body.inner.class_matches_target()
        return len(set(self.body.markers.values())) == len(self.body.markers)


@dataclass(frozen=True)
class ProjectivityCertificate:
    """높이 h_i (지지 함수 값), 극대 뿔별 m_σ (⟨m_σ, v_i⟩ = h_i on σ), 여유값 margin."""

    fan: Fan
    heights: Vector
    functionals: Dict[Cone, Vector]
    margin: Fraction
    projective: bool = True

    def verify(self) -> bool:
        """대입으로 검증: 선형성 + 모든 벽의 양쪽에서 h_j − ⟨m_σ, v_j⟩ ≥ margin > 0."""
        F = self.fan
        if self.margin <= 0 or set(self.functionals) != set(F.max_cones):
            return False
        for sigma, m in self.functionals.items():
            if any(dot(m, F.rays[i]) != self.heights[i] for i in sigma):
                return False
        for sigma in F.max_cones:
            for wall in _walls(sigma):
                for other in F.max_cones_containing(wall):
                    if other == sigma:
                        continue
                    j = next(i for i in other if i not in wall)
                    if self.heights[j] - dot(self.functionals[sigma], F.rays[j]) < self.margin:
                        return False
        return True


def _walls(sigma: Cone) -> List[Cone]:
    return [tuple(i for i in sigma if i != j) for j in sigma]


@dataclass(frozen=True)
class NonProjectivityReport:
    """벽 관계들의 음이 아닌 결합 Σ y_w a_w = 0 (Σ y_w = 1) 으로 사영성이 불가능함을 보인다."""

    fan: Fan
    wall_weights: Dict[Cone, Fraction]
    message: str = "not projective"
    projective: bool = False

    def verify(self, wall_classes: Dict[Cone, Vector]) -> bool:
        if any(y < 0 for y in self.wall_weights.values()) or sum(self.wall_weights.values()) != 1:
            return False
        total = [Fraction(0)] * self.fan.num_rays
        for w, y in self.wall_weights.items():
            total = [t + y * a for t, a in zip(total, wall_classes[w])]
        return all(t == 0 for t in total)


@dataclass(frozen=True)
class ScheduleAttempt:
    step: int
    p: Fraction
    q: Fraction
    epsilon_base: Optional[int]  # None 이면 섭동 없는 시도 (ε_j = 1)
    outcome: str


@dataclass(frozen=True)
class SmallModification:
    source: Fan
    target: Fan
    tau: Cone
    rays_s: Tuple[int, ...]
    p: Fraction
    q: Fraction
    epsilons: Dict[int, Fraction]
    face_fan: Fan  # Δ_Q (꼭짓점 광선만, 자체 인덱스)
    face_fan_rays: Tuple[int, ...]  # Δ_Q 광선 → 원래 인덱스
    subdivisions: Tuple[int, ...]
    attempts: Tuple[ScheduleAttempt, ...]
    certificate: ProjectivityCertificate

    @property
    def is_trivial(self) -> bool:
        return self.source.max_cones == self.target.max_cones
