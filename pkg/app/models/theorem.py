"""분해(Decomposition)와 정리 검증 보고서 타입."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from app.models.classes import StableBaseLocus
from app.models.construct import CurveWitness, SmallModification
from app.models.fan import Cone, Fan
from app.utils.ratlinalg import Vector


@dataclass(frozen=True)
class Decomposition:
    """Amp^ℓ∨ 의 극선 c 를 소수정 위의 움직이는 곡선 증거로 표현."""

    fan: Fan
    c: Vector
    ell: int
    sigma: Cone
    tau: Cone
    modification: Optional[SmallModification]
    witness: CurveWitness

    @property
    def swept_dimension(self) -> int:
        return self.fan.rank - len(self.tau)

    @property
    def target_fan(self) -> Fan:
        return self.modification.target if self.modification is not None else self.fan


@dataclass
class ModificationCheck:
    """소수정 하나에 대한 역방향 포함 및 Amp¹ 불변성 확인."""

    modification: SmallModification
    mov_generators_ok: bool
    amp1_invariant: Optional[bool]


@dataclass
class TheoremReport:
    fan: Fan
    k: int
    extremal_rays: List[Vector]
    decompositions: List[Decomposition] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    modification_checks: List[ModificationCheck] = field(default_factory=list)
    source_mov_ok: bool = True
    natural_inclusions: bool = True
    strict_inclusion_rays: List[Vector] = field(default_factory=list)

    @property
    def forward_ok(self) -> bool:
        return not self.failures and all(d.swept_dimension >= self.k for d in self.decompositions)

    @property
    def reverse_ok(self) -> bool:
        return self.source_mov_ok and all(m.mov_generators_ok for m in self.modification_checks)

    @property
    def verified(self) -> bool:
        return self.forward_ok and self.reverse_ok

    @property
    def verdict(self) -> str:
        return "verified" if self.verified else "failed"


@dataclass
class BaseLocusTest:
    """dim B(D) < k 판정과, 거짓일 때의 곡선 반례."""

    divisor: Vector
    k: int
    locus: StableBaseLocus
    holds: bool
    subvariety_cone: Optional[Cone] = None
    decomposition: Optional[Decomposition] = None
    intersection: Optional[Fraction] = None  # (f(D) · C)
    swept_cone: Optional[Cone] = None  # C 가 X† 위에서 훑는 V(τ_c)
