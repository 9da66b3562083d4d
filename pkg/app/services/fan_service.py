"""팬 연산: 검증, 별 세분, 몫 팬, 인접 광선, 차원별 뿔 열거."""
from __future__ import annotations

import itertools
import logging
import random
from collections import Counter
from math import gcd
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence

from app.config.settings import get_settings
from app.models.errors import FanValidationError
from app.models.fan import Cone, Fan, QuotientFanData, RayImage, ValidationReport, as_cone
from app.utils.polyhedra import PolyCone, cone_intersection
from app.utils.ratlinalg import (
    IntMatrix,
    coordinates_in_basis,
    is_zero_vector,
    primitive_vector,
    rank,
    smith_normal_form,
)

logger = logging.getLogger(__name__)


def require_cone(F: Fan, tau: Iterable[int]) -> Cone:
    t = as_cone(tau)
    if t not in F.cones:
        raise FanValidationError(f"{list(t)} is not a cone of the fan")
    return t


# ──────────────────────────────────────────────────────────────
# 검증
# ──────────────────────────────────────────────────────────────

def _check_structure(F: Fan) -> Dict[str, List]:
    """광선 길이, 중복/미사용 광선, 범위 밖 인덱스."""
    problems: Dict[str, List] = {}
    used = set(i for sigma in F.max_cones for i in sigma)
    seen: Dict[tuple, int] = {}
    for i, v in enumerate(F.rays):
        if len(v) != F.rank:
            problems.setdefault("ray_length", []).append(i)
        if v in seen:
            problems.setdefault("duplicate_rays", []).append([seen[v], i])
        seen.setdefault(v, i)
        if i not in used:
            problems.setdefault("unused_rays", []).append(i)
    out_of_range = sorted({j for sigma in F.max_cones for j in sigma if j < 0 or j >= F.num_rays})
    if out_of_range:
        problems["cone_indices"] = out_of_range
    return problems


def _check_rays(F: Fan) -> List[int]:
    return [i for i, v in enumerate(F.rays) if is_zero_vector(v) or reduce(gcd, (abs(a) for a in v), 0) != 1]


def _check_simplicial(F: Fan) -> List[Cone]:
    return [sigma for sigma in F.max_cones if rank(F.cone_rays(sigma), F.rank) != len(sigma)]


def _check_compatible(F: Fan) -> List[List[Cone]]:
    bad: List[List[Cone]] = []
    for s1, s2 in itertools.combinations(F.max_cones, 2):
        common = sorted(set(s1) & set(s2))
        meet = cone_intersection(F.polycones[s1], F.polycones[s2])
        face = PolyCone.from_generators(F.rank, F.cone_rays(common))
        if not meet.same_set(face):
            bad.append([s1, s2])
    return bad


def _random_direction(rng: random.Random, n: int) -> tuple:
    while True:
        v = tuple(rng.randint(-1000, 1000) for _ in range(n))
        if not is_zero_vector(v):
            return v


def _check_complete(F: Fan, samples: int, seed: int) -> Dict[str, List]:
    """순수 n 차원 + 모든 벽이 정확히 두 극대 뿔에 포함 + 무작위 방향 점 위치 교차 검증."""
    n = F.rank
    problems: Dict[str, List] = {}
    impure = [sigma for sigma in F.max_cones if len(sigma) != n]
    if impure:
        problems["impure_cones"] = impure
    if n == 0:
        return problems
    walls = Counter(wall for sigma in F.max_cones if len(sigma) == n for wall in itertools.combinations(sigma, n - 1))
    boundary = sorted(w for w, count in walls.items() if count != 2)
    if boundary:
        problems["boundary_walls"] = boundary
    if problems:
        return problems
    rng = random.Random(seed)
    misses = []
    for _ in range(samples):
        x = _random_direction(rng, n)
        if F.locate(x) is None:
            misses.append(list(x))
    if misses:
        problems["uncovered_directions"] = misses
    return problems


def validate_fan(F: Fan, samples: Optional[int] = None, seed: Optional[int] = None) -> ValidationReport:
    """팬 공리 검사. 실패는 예외가 아니라 보고서 항목."""
    settings = get_settings()
    samples = settings.completeness_samples if samples is None else samples
    seed = settings.random_seed if seed is None else seed

    structure = _check_structure(F)
    bad_rays = _check_rays(F)
    offending: Dict[str, List] = dict(structure)
    if bad_rays:
        offending["rays"] = bad_rays
    if structure or bad_rays:
        # 구조가 깨진 입력은 이후 검사를 진행하지 않음
        report = ValidationReport(not bad_rays, None, None, None, offending, well_formed=not structure)
        logger.debug(f"validate_fan({F.name}): {report}")
        return report

    non_simplicial = _check_simplicial(F)
    if non_simplicial:
        offending["non_simplicial"] = non_simplicial
    incompatible = _check_compatible(F)
    if incompatible:
        offending["incompatible"] = incompatible
    incomplete = _check_complete(F, samples, seed)
    offending.update(incomplete)

    report = ValidationReport(
        rays_primitive=True,
        simplicial=not non_simplicial,
        compatible=not incompatible,
        complete=not incomplete,
        offending=offending,
    )
    logger.debug(f"validate_fan({F.name}): {report}")
    return report


def require_valid(F: Fan) -> Fan:
    report = validate_fan(F)
    if not report.ok:
        raise FanValidationError(f"invalid fan {F.name or ''}: failed {', '.join(report.failures())} {report.offending}")
    return F


# ──────────────────────────────────────────────────────────────
# 조합 질의
# ──────────────────────────────────────────────────────────────

def cones_of_dim(F: Fan, d: int) -> List[Cone]:
    if d < 0 or d > F.rank:
        raise ValueError(f"cone dimension {d} out of range 0..{F.rank}")
    return sorted(c for c in F.cones if len(c) == d)


def adjacent_rays(F: Fan, tau: Iterable[int]) -> List[int]:
    """τ 와 공통 뿔에 놓이는 광선 (τ 자신의 광선 포함)."""
    t = require_cone(F, tau)
    return sorted(set(i for sigma in F.max_cones_containing(t) for i in sigma))


# ──────────────────────────────────────────────────────────────
# 별 세분
# ──────────────────────────────────────────────────────────────

def star_subdivision(F: Fan, v: Sequence) -> Fan:
    """v 를 포함하는 각 뿔 σ 를 ⟨v, G⟩ (G: v 를 포함하지 않는 σ 의 패싯) 로 교체. 새 광선은 맨 뒤."""
    vec = tuple(int(a) for a in primitive_vector(v))
    if vec in F.rays:
        raise FanValidationError(f"{list(vec)} is already a ray of the fan")
    new_index = F.num_rays
    new_cones: List[Cone] = []
    hit = False
    for sigma in F.max_cones:
        coords = coordinates_in_basis(F.cone_rays(sigma), vec)
        if coords is None or any(c < 0 for c in coords):
            new_cones.append(sigma)
            continue
        hit = True
        for i, c in zip(sigma, coords):
            if c > 0:
                new_cones.append(as_cone([j for j in sigma if j != i] + [new_index]))
    if not hit:
        raise FanValidationError(f"{list(vec)} is not in the support of the fan")
    return Fan(F.rank, F.rays + (vec,), tuple(new_cones), F.name, None)


# ──────────────────────────────────────────────────────────────
# 몫 팬
# ──────────────────────────────────────────────────────────────

def _quotient_projection(F: Fan, tau: Cone) -> IntMatrix:
    """span(τ) ∩ N 을 핵으로 갖는 전사 N → Z^(n−k). SNF 의 U 마지막 n−k 행."""
    n, k = F.rank, len(tau)
    if k == 0:
        return IntMatrix.identity(n)
    U, _, _ = smith_normal_form(IntMatrix.from_columns(F.cone_rays(tau), n))
    return IntMatrix(U.entries[k:], n)


def quotient_fan(F: Fan, tau: Iterable[int]) -> QuotientFanData:
    t = require_cone(F, tau)
    projection = _quotient_projection(F, t)
    q_rank = F.rank - len(t)
    star = F.max_cones_containing(t)

    ray_map: Dict[int, RayImage] = {}
    images: List[tuple] = []
    for i in sorted(set(j for sigma in star for j in sigma) - set(t)):
        pv = tuple(int(a) for a in projection.apply(F.rays[i]))
        m = reduce(gcd, (abs(a) for a in pv), 0)
        w = tuple(a // m for a in pv)
        if w not in images:
            images.append(w)
        ray_map[i] = RayImage(images.index(w), w, m)

    q_cones = [as_cone(ray_map[j].index for j in sigma if j not in t) for sigma in star]
    label = f"{F.name or 'fan'}/{list(t)}"
    q_fan = Fan(q_rank, tuple(images), tuple(q_cones), label)
    logger.debug(f"quotient fan at {list(t)}: rank {q_rank}, rays {images}")
    return QuotientFanData(t, q_rank, projection, q_fan, ray_map)
