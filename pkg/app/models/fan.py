"""팬(Fan) 자료구조와 검증/몫 팬 결과 타입.

- 뿔의 식별자 = 정렬된 광선 인덱스 튜플 (0-based)
- 광선은 원시 정수 벡터 튜플
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from app.utils.polyhedra import PolyCone
from app.utils.ratlinalg import IntMatrix

Cone = Tuple[int, ...]
Ray = Tuple[int, ...]


def as_cone(indices: Iterable[int]) -> Cone:
    return tuple(sorted(set(int(i) for i in indices)))


@dataclass(frozen=True)
class Fan:
    """격자 Z^rank 안의 팬. 하위 뿔은 극대 뿔의 부분집합으로 유도된다."""

    rank: int
    rays: Tuple[Ray, ...]
    max_cones: Tuple[Cone, ...]
    name: Optional[str] = field(default=None, compare=False)
    divisor_basis: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in v) for v in self.rays))
        object.__setattr__(self, "max_cones", tuple(sorted(as_cone(c) for c in self.max_cones)))
        if self.divisor_basis is not None:
            object.__setattr__(self, "divisor_basis", tuple(int(i) for i in self.divisor_basis))

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def ray_matrix(self) -> IntMatrix:
        """열이 v_i 인 rank × r 행렬."""
        return IntMatrix.from_columns(self.rays, self.rank)

    @cached_property
    def cones(self) -> FrozenSet[Cone]:
        """모든 뿔 (영뿔 포함)."""
        result = set()
        for sigma in self.max_cones:
            for d in range(len(sigma) + 1):
                result.update(itertools.combinations(sigma, d))
        return frozenset(result)

    def is_cone(self, tau: Iterable[int]) -> bool:
        return as_cone(tau) in self.cones

    def max_cones_containing(self, tau: Iterable[int]) -> List[Cone]:
        t = set(tau)
        return [sigma for sigma in self.max_cones if t.issubset(sigma)]

    def cone_rays(self, tau: Iterable[int]) -> List[Ray]:
        return [self.rays[i] for i in as_cone(tau)]

    @cached_property
    def polycones(self) -> Dict[Cone, PolyCone]:
        return {sigma: PolyCone.from_generators(self.rank, self.cone_rays(sigma)) for sigma in self.max_cones}

    def locate(self, x: Sequence) -> Optional[Cone]:
        """x 를 포함하는 첫 극대 뿔 (없으면 None)."""
        for sigma in self.max_cones:
            if self.polycones[sigma].contains(x):
                return sigma
        return None

    def __repr__(self) -> str:
        return f"Fan(name={self.name!r}, rank={self.rank}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"


@dataclass
class ValidationReport:
    """팬 검사 결과. 구조가 깨진 입력이면 이후 검사는 하지 않고 None 으로 남긴다."""

    rays_primitive: bool
    simplicial: Optional[bool]
    compatible: Optional[bool]
    complete: Optional[bool]
    offending: Dict[str, List] = field(default_factory=dict)
    well_formed: bool = True

    CHECKS = ("well_formed", "rays_primitive", "simplicial", "compatible", "complete")

    @property
    def ok(self) -> bool:
        return all(getattr(self, name) is True for name in self.CHECKS)

    def failures(self) -> List[str]:
        return [name for name in self.CHECKS if getattr(self, name) is False]

    def unchecked(self) -> List[str]:
        return [name for name in self.CHECKS if getattr(self, name) is None]


@dataclass(frozen=True)
class RayImage:
    """τ 에 인접한 (τ 밖의) 광선 ρ_i 의 몫 격자 상: π(v_i) = multiplier · image."""

    index: int
    image: Ray
    multiplier: int


@dataclass(frozen=True)
class QuotientFanData:
    base_cone: Cone
    quotient_rank: int
    projection: IntMatrix
    quotient_fan: Fan
    ray_map: Dict[int, RayImage]

    def source_index(self, quotient_index: int) -> int:
        """몫 팬 광선 인덱스 → 원래 팬 광선 인덱스."""
        for i, img in self.ray_map.items():
            if img.index == quotient_index:
                return i
        raise KeyError(quotient_index)
