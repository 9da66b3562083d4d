"""인자/곡선류 연산: Γ_τ, Amp^k 와 그 쌍대, Mov_k, P_D, 안정 기저 궤적."""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.config.settings import get_settings
from app.models.classes import (
    ClassLike,
    ClassSpaces,
    CycleClass,
    DivisorClass,
    StableBaseLocus,
    coefficients_of,
    minimal_cones,
)
from app.models.errors import FanValidationError
from app.models.fan import Cone, Fan, as_cone
from app.services.fan_service import adjacent_rays, cones_of_dim, require_cone
from app.utils.polyhedra import Polytope, PolyCone, intersect_all, iter_lattice_points, polytope_from_inequalities, sum_all
from app.utils.ratlinalg import Vector, dot, integer_kernel_basis, is_integral, nullspace_basis, primitive_vector, rank

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────────────────────
# 류 공간
# ──────────────────────────────────────────────────────────────

def _greedy_basis(F: Fan) -> Tuple[int, ...]:
    """끝에서부터, 나머지 광선이 여전히 N_R 을 생성하면 기저 집합에 넣는다."""
    chosen: List[int] = []
    target = F.num_rays - F.rank
    for j in reversed(range(F.num_rays)):
        if len(chosen) == target:
            break
        rest = [F.rays[i] for i in range(F.num_rays) if i not in chosen and i != j]
        if rank(rest, F.rank) == F.rank:
            chosen.append(j)
    return tuple(sorted(chosen))


@lru_cache(maxsize=64)
def _class_spaces(F: Fan, pinned: Optional[Tuple[int, ...]]) -> ClassSpaces:
    n, r = F.rank, F.num_rays
    if pinned is not None:
        basis = tuple(sorted(pinned))
        complement = [F.rays[i] for i in range(r) if i not in basis]
        if len(set(basis)) != r - n or rank(complement, n) != n:
            raise FanValidationError(f"divisor_basis {list(pinned)} is not a basis of N^1")
    else:
        basis = _greedy_basis(F)
    complement_indices = tuple(i for i in range(r) if i not in basis)
    kernel = tuple(integer_kernel_basis(F.ray_matrix)) if r else ()
    return ClassSpaces(F, F.ray_matrix, kernel, basis, complement_indices)


def class_spaces(F: Fan) -> ClassSpaces:
    return _class_spaces(F, F.divisor_basis)


def pair(D: ClassLike, c: ClassLike) -> Fraction:
    """(D · c) = Σ d_i a_i."""
    if isinstance(D, DivisorClass) and isinstance(c, CycleClass) and D.fan != c.fan:
        raise FanValidationError("divisor and curve class belong to different fans")
    d, a = coefficients_of(D), coefficients_of(c)
    if len(d) != len(a):
        raise FanValidationError(f"coefficient lengths differ: {len(d)} vs {len(a)}")
    return dot(d, a)


# ──────────────────────────────────────────────────────────────
# Γ_τ, Amp^k, 쌍대
# ──────────────────────────────────────────────────────────────

def gamma_cone(F: Fan, tau: Iterable[int]) -> PolyCone:
    """Γ_τ = ⟨[D_j] : ρ_j ∉ τ⟩ ⊂ N¹ (N¹ 좌표)."""
    return _gamma_cone(F, F.divisor_basis, require_cone(F, tau))


@lru_cache(maxsize=512)
def _gamma_cone(F: Fan, pinned: Optional[Tuple[int, ...]], t: Cone) -> PolyCone:
    spaces = class_spaces(F)
    gens = [g for j, g in enumerate(spaces.divisor_generators) if j not in t]
    return PolyCone.from_generators(spaces.picard_rank, gens)


def gamma_dual_cone(F: Fan, tau: Iterable[int]) -> PolyCone:
    """Γ_τ^∨ ⊂ N₁ ⊂ R^r: Σ a_i v_i = 0, a_i ≥ 0 (ρ_i ∉ τ)."""
    return _gamma_dual_cone(F, require_cone(F, tau))


@lru_cache(maxsize=512)
def _gamma_dual_cone(F: Fan, t: Cone) -> PolyCone:
    r = F.num_rays
    ineqs = [_unit(r, i) for i in range(r) if i not in t]
    return PolyCone.from_inequalities(r, ineqs, F.ray_matrix.entries)


def _unit(r: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(r))


def _check_level(F: Fan, k: int, low: int, high: int) -> None:
    if k < low or k > high:
        raise ValueError(f"k = {k} out of range {low}..{high}")


def amp_cone(F: Fan, k: int) -> PolyCone:
    """Amp^k = ∩_{dim τ = k} Γ_τ (N¹ 좌표)."""
    _check_level(F, k, 0, F.rank - 1)
    return _amp_cone(F, F.divisor_basis, k)


@lru_cache(maxsize=64)
def _amp_cone(F: Fan, pinned: Optional[Tuple[int, ...]], k: int) -> PolyCone:
    return intersect_all(class_spaces(F).picard_rank, [gamma_cone(F, t) for t in cones_of_dim(F, k)])


def amp_dual_cone(F: Fan, k: int) -> PolyCone:
    """Amp^k∨ = Σ_{dim τ = k} Γ_τ^∨ (R^r 안의 N₁)."""
    _check_level(F, k, 0, F.rank - 1)
    return _amp_dual_cone(F, k)


@lru_cache(maxsize=64)
def _amp_dual_cone(F: Fan, k: int) -> PolyCone:
    return sum_all(F.num_rays, [gamma_dual_cone(F, t) for t in cones_of_dim(F, k)])


def curve_cone_in_dual_coordinates(F: Fan, C: PolyCone) -> PolyCone:
    """R^r 안의 N₁ 뿔 → N¹ 좌표의 쌍대 좌표 (a ↦ a_I)."""
    spaces = class_spaces(F)
    return PolyCone.from_generators(
        spaces.picard_rank,
        [spaces.curve_dual_coordinates(g) for g in C.rays],
        [spaces.curve_dual_coordinates(l) for l in C.lineality],
    )


# ──────────────────────────────────────────────────────────────
# 벽 곡선 / 토릭 Kleiman 판정
# ──────────────────────────────────────────────────────────────

def wall_curve_class(F: Fan, wall: Iterable[int]) -> Vector:
    """(n−1) 뿔 ω 에 대응하는 곡선 V(ω) 의 류 (원시 관계, 대향 광선 계수 > 0)."""
    w = require_cone(F, wall)
    if len(w) != F.rank - 1:
        raise ValueError(f"{list(w)} is not a wall")
    sides = F.max_cones_containing(w)
    if len(sides) != 2:
        raise FanValidationError(f"wall {list(w)} lies in {len(sides)} maximal cones")
    support = sorted(set(sides[0]) | set(sides[1]))
    # support 위 관계 공간은 1차원 (단체적 완비 팬)
    rows = [[F.rays[i][k] for i in support] for k in range(F.rank)]
    kernel = nullspace_basis(rows, len(support))
    rel = kernel[0]
    opposite = next(i for i in support if i not in w)
    if rel[support.index(opposite)] < 0:
        rel = tuple(-x for x in rel)
    a = [Fraction(0)] * F.num_rays
    for i, value in zip(support, rel):
        a[i] = value
    return primitive_vector(a)


@lru_cache(maxsize=64)
def wall_curve_classes(F: Fan) -> Dict[Cone, Vector]:
    return {w: wall_curve_class(F, w) for w in cones_of_dim(F, F.rank - 1)}


def nef_cone_from_walls(F: Fan) -> PolyCone:
    """벽 곡선류 모두와 음이 아닌 교차수를 갖는 인자류 (N¹ 좌표)."""
    spaces = class_spaces(F)
    normals = [spaces.curve_dual_coordinates(a) for a in wall_curve_classes(F).values()]
    return PolyCone.from_inequalities(spaces.picard_rank, normals)


def mori_cone(F: Fan) -> PolyCone:
    """벽 곡선류가 생성하는 곡선 뿔 (R^r)."""
    return PolyCone.from_generators(F.num_rays, list(wall_curve_classes(F).values()))


# ──────────────────────────────────────────────────────────────
# Mov_k
# ──────────────────────────────────────────────────────────────

def movable_piece(F: Fan, tau: Iterable[int]) -> PolyCone:
    """M_τ = {a : Σ a_i v_i = 0, a_i = 0 (ρ_i 비인접), a_i ≥ 0 (ρ_i ∉ τ)}."""
    t = require_cone(F, tau)
    r = F.num_rays
    adjacent = set(adjacent_rays(F, t))
    ineqs = [_unit(r, i) for i in sorted(adjacent) if i not in t]
    eqs = list(F.ray_matrix.entries) + [_unit(r, i) for i in range(r) if i not in adjacent]
    return PolyCone.from_inequalities(r, ineqs, eqs)


def mov_cone(F: Fan, k: int) -> PolyCone:
    """Mov_k = Σ_{dim τ ≤ n−k} M_τ."""
    _check_level(F, k, 1, F.rank)
    return _mov_cone(F, k)


@lru_cache(maxsize=64)
def _mov_cone(F: Fan, k: int) -> PolyCone:
    cones = [t for d in range(F.rank - k + 1) for t in cones_of_dim(F, d)]
    return sum_all(F.num_rays, [movable_piece(F, t) for t in cones])


def ray_permutation(F: Fan, other: Fan) -> List[int]:
    """other 의 광선 j → F 의 광선 인덱스."""
    lookup = {v: i for i, v in enumerate(F.rays)}
    if len(F.rays) != len(other.rays) or any(v not in lookup for v in other.rays):
        raise FanValidationError("fans do not share the same ray set")
    return [lookup[v] for v in other.rays]


def transport_class(perm: Sequence[int], a: Sequence) -> Vector:
    """other 인덱스의 계수 → F 인덱스의 계수."""
    out = [Fraction(0)] * len(perm)
    for j, i in enumerate(perm):
        out[i] = Fraction(a[j])
    return tuple(out)


def mov_cone_via(F: Fan, F_dagger: Fan, k: int) -> PolyCone:
    """Mov_k(X, X†): F† 위의 M_τ 합을 광선 인덱스 대응으로 F 의 R^r 로 옮긴 뿔.

    τ 는 Δ 와 Δ† 양쪽의 뿔이어야 한다 (V(τ) 가 X 의 부분다양체의 상). dim τ ≤ n−k.
    """
    _check_level(F_dagger, k, 1, F_dagger.rank)
    perm = ray_permutation(F, F_dagger)
    shared = [
        t
        for d in range(F_dagger.rank - k + 1)
        for t in cones_of_dim(F_dagger, d)
        if as_cone(perm[j] for j in t) in F.cones
    ]
    C = sum_all(F_dagger.num_rays, [movable_piece(F_dagger, t) for t in shared])
    return PolyCone.from_generators(
        F.num_rays,
        [transport_class(perm, g) for g in C.rays],
        [transport_class(perm, l) for l in C.lineality],
    )


# ──────────────────────────────────────────────────────────────
# P_D, 단면, 안정 기저 궤적
# ──────────────────────────────────────────────────────────────

def divisor_polytope(F: Fan, D: ClassLike) -> Polytope:
    """P_D = {u ∈ M_Q : ⟨u, v_i⟩ ≥ −d_i}."""
    d = coefficients_of(D)
    if len(d) != F.num_rays:
        raise FanValidationError(f"expected {F.num_rays} coefficients, got {len(d)}")
    return polytope_from_inequalities(F.rank, [(F.rays[i], d[i]) for i in range(F.num_rays)])


def section_points(F: Fan, D: ClassLike) -> List[Tuple[int, ...]]:
    """P_D ∩ M (H⁰(X, O(D)) 의 단항식 기저)."""
    d = coefficients_of(D)
    if not is_integral(d):
        raise ValueError("section_points requires an integral divisor")
    return divisor_polytope(F, d).lattice_points()


def stable_base_locus(F: Fan, D: ClassLike) -> StableBaseLocus:
    """V(τ) ⊆ B(D) ⇔ [D] ∉ Γ_τ. 유리 계수 허용."""
    spaces = class_spaces(F)
    x = spaces.divisor_coordinates(coefficients_of(D))
    members = [t for t in sorted(F.cones) if not gamma_cone(F, t).contains(x)]
    return StableBaseLocus(F, minimal_cones(members))


def _has_tight_section(F: Fan, P: Polytope, d: Vector, m: int, tau: Cone) -> bool:
    """mD 의 단면 χ^u 중 V(τ) 에서 소멸하지 않는 것이 있는지: u ∈ mP_D ∩ M, ⟨u, v_i⟩ = −m d_i (i ∈ τ)."""
    face = [v for v in P.vertices if all(dot(v, F.rays[i]) == -d[i] for i in tau)]
    if not face:
        return False
    constraints = [(F.rays[i], m * d[i]) for i in range(F.num_rays)]
    constraints += [(tuple(-x for x in F.rays[i]), -m * d[i]) for i in tau]
    box = [tuple(m * x for x in v) for v in face]
    return next(iter_lattice_points(box, constraints), None) is not None


def base_locus_finite(F: Fan, D: ClassLike, m_max: Optional[int] = None) -> StableBaseLocus:
    """∩_{1≤m≤m_max} Bs|mD|. m | m' 이면 Bs|m'D| ⊆ Bs|mD| 이므로 m_max/2 < m ≤ m_max 만 계산."""
    m_max = get_settings().base_locus_m_max if m_max is None else m_max
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    d = coefficients_of(D)
    if not is_integral(d):
        raise ValueError("base_locus_finite requires an integral divisor")
    P = divisor_polytope(F, d)
    common = set(F.cones)
    for m in range(m_max // 2 + 1, m_max + 1):
        common = {t for t in common if not _has_tight_section(F, P, d, m, t)}
        if not common:
            break
    return StableBaseLocus(F, minimal_cones(common))
