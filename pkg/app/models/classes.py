"""인자류(N¹)와 곡선류(N₁) 공간, 안정 기저 궤적 타입.

N¹ 좌표: 기저 인덱스 I 에 대한 [D_i] (i ∈ I) 를 좌표축으로 사용한다.
여집합 B 의 광선들은 N_R 의 기저이므로, 임의의 d 에서 주인자를 빼 d_B = 0 인 대표원을 얻는다.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from app.models.errors import DimensionMismatchError, FanValidationError
from app.models.fan import Cone, Fan
from app.utils.ratlinalg import IntMatrix, Vector, as_vector, dot, is_zero_vector, solve_linear


@dataclass(frozen=True)
class ClassSpaces:
    fan: Fan
    divisor_relations: IntMatrix  # n × r, 행 u ↦ (⟨u, v_i⟩)_i
    curve_subspace: Tuple[Vector, ...]  # {a : Σ a_i v_i = 0} 의 정수 기저
    basis_indices: Tuple[int, ...]
    complement_indices: Tuple[int, ...]

    @property
    def picard_rank(self) -> int:
        return self.fan.num_rays - self.fan.rank

    def _check_length(self, values: Sequence) -> Vector:
        v = as_vector(values)
        if len(v) != self.fan.num_rays:
            raise DimensionMismatchError(f"expected {self.fan.num_rays} coefficients, got {len(v)}")
        return v

    def principal_shift(self, d: Sequence) -> Vector:
        """d_B + ⟨u, v_B⟩ = 0 을 만족하는 u ∈ M_Q."""
        d = self._check_length(d)
        n = self.fan.rank
        rows = [self.fan.rays[b] for b in self.complement_indices]
        rhs = [-d[b] for b in self.complement_indices]
        return solve_linear(rows, rhs, n) if n else ()

    def divisor_coordinates(self, d: Sequence) -> Vector:
        """[Σ d_i D_i] 의 N¹ 좌표."""
        d = self._check_length(d)
        u = self.principal_shift(d)
        return tuple(d[i] + dot(u, self.fan.rays[i]) for i in self.basis_indices)

    def divisor_from_coordinates(self, x: Sequence) -> Vector:
        """N¹ 좌표 → d_B = 0 인 대표 계수."""
        x = as_vector(x)
        d = [Fraction(0)] * self.fan.num_rays
        for i, value in zip(self.basis_indices, x):
            d[i] = value
        return tuple(d)

    def same_divisor_class(self, d1: Sequence, d2: Sequence) -> bool:
        return self.divisor_coordinates(d1) == self.divisor_coordinates(d2)

    @property
    def divisor_generators(self) -> List[Vector]:
        """각 [D_j] 의 N¹ 좌표."""
        r = self.fan.num_rays
        return [self.divisor_coordinates([1 if i == j else 0 for i in range(r)]) for j in range(r)]

    def is_curve_class(self, a: Sequence) -> bool:
        a = self._check_length(a)
        return is_zero_vector(self.divisor_relations.apply(a))

    def curve_dual_coordinates(self, a: Sequence) -> Vector:
        """곡선류 a ∈ N₁ ⊂ R^r → N¹ 좌표의 쌍대 좌표 (D_i · a)_{i∈I} = a_I."""
        a = self._check_length(a)
        return tuple(a[i] for i in self.basis_indices)

    def curve_from_dual_coordinates(self, y: Sequence) -> Vector:
        """a_I = y 이고 Σ a_i v_i = 0 인 유일한 a."""
        y = as_vector(y)
        n, r = self.fan.rank, self.fan.num_rays
        a = [Fraction(0)] * r
        for i, value in zip(self.basis_indices, y):
            a[i] = value
        if n:
            partial = self.divisor_relations.apply(a)
            # Σ_B a_b v_b = −Σ_I a_i v_i
            rows = [[self.fan.rays[b][k] for b in self.complement_indices] for k in range(n)]
            sol = solve_linear(rows, [-p for p in partial], n)
            for b, value in zip(self.complement_indices, sol):
                a[b] = value
        return tuple(a)


@dataclass(frozen=True)
class DivisorClass:
    """D = Σ d_i D_i 의 한 대표원."""

    fan: Fan
    coefficients: Vector

    def __post_init__(self):
        object.__setattr__(self, "coefficients", as_vector(self.coefficients))
        if len(self.coefficients) != self.fan.num_rays:
            raise DimensionMismatchError(f"expected {self.fan.num_rays} coefficients, got {len(self.coefficients)}")


@dataclass(frozen=True)
class CycleClass:
    """곡선류 (a_1, …, a_r), Σ a_i v_i = 0."""

    fan: Fan
    coefficients: Vector

    def __post_init__(self):
        object.__setattr__(self, "coefficients", as_vector(self.coefficients))
        a = self.coefficients
        if len(a) != self.fan.num_rays:
            raise DimensionMismatchError(f"expected {self.fan.num_rays} coefficients, got {len(a)}")
        if not is_zero_vector(self.fan.ray_matrix.apply(a)):
            raise FanValidationError("not a curve class: a_1 v_1 + ... + a_r v_r != 0")


ClassLike = Union[DivisorClass, CycleClass, Sequence]


def coefficients_of(x: ClassLike) -> Vector:
    if isinstance(x, (DivisorClass, CycleClass)):
        return x.coefficients
    return as_vector(x)


@dataclass(frozen=True)
class StableBaseLocus:
    """안정 기저 궤적. member_cones 는 포함 관계상 극소인 뿔만 저장."""

    fan: Fan
    member_cones: Tuple[Cone, ...]

    @property
    def dimension(self) -> Optional[int]:
        """max (n − dim τ), 비어 있으면 None (−∞)."""
        if not self.member_cones:
            return None
        return self.fan.rank - min(len(t) for t in self.member_cones)

    @property
    def is_empty(self) -> bool:
        return not self.member_cones

    def dimension_less_than(self, k: int) -> bool:
        return self.dimension is None or self.dimension < k


def minimal_cones(cones: Iterable[Cone]) -> Tuple[Cone, ...]:
    cones = sorted(set(cones), key=lambda c: (len(c), c))
    result: List[Cone] = []
    for c in cones:
        if not any(set(m).issubset(c) for m in result):
            result.append(c)
    return tuple(sorted(result))
