"""구성 엔진: 곡선 증거, 사영적 소수정, 사영성 인증서."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from app.config.settings import get_settings
from app.models.classes import ClassLike, coefficients_of
from app.models.construct import (
    ConditionReport,
    CurveWitness,
    NonProjectivityReport,
    OnSubvariety,
    ProjectivityCertificate,
    ScheduleAttempt,
    SmallModification,
    SweepAll,
)
from app.models.errors import (
    CurveConditionError,
    FanValidationError,
    HypothesisError,
    ScheduleExhaustedError,
    ToricError,
)
from app.models.fan import Cone, Fan, as_cone
from app.services.classes_service import wall_curve_classes
from app.services.fan_service import adjacent_rays, quotient_fan, require_cone, star_subdivision, validate_fan
from app.utils.lp import find_feasible_point, maximize_margin
from app.utils.polyhedra import PolyCone, polytope_faces, vertex_index_map
from app.utils.ratlinalg import Vector, denominator_lcm, is_zero_vector, rank, solve_linear

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────────────────────
# 곡선 증거
# ──────────────────────────────────────────────────────────────

def check_curve_conditions(F: Fan, tau: Iterable[int], a: ClassLike) -> ConditionReport:
    """조건 (1)–(3) 검사. 실패 시 처음 위반된 조건과 광선 인덱스를 보고."""
    t = require_cone(F, tau)
    coeffs = coefficients_of(a)
    if len(coeffs) != F.num_rays:
        raise FanValidationError(f"expected {F.num_rays} coefficients, got {len(coeffs)}")
    if not is_zero_vector(F.ray_matrix.apply(coeffs)):
        return ConditionReport(False, 1, None, "condition (1) violated: a_1 v_1 + ... + a_r v_r != 0")
    adjacent = set(adjacent_rays(F, t))
    for i, x in enumerate(coeffs):
        if x != 0 and i not in adjacent:
            return ConditionReport(False, 2, i, f"condition (2) violated: a_{i} = {x} but ray {i} is not adjacent to {list(t)}")
    for i, x in enumerate(coeffs):
        if x < 0 and i not in t:
            return ConditionReport(False, 3, i, f"condition (3) violated: a_{i} = {x} < 0 but ray {i} is not in {list(t)}")
    return ConditionReport(True)


def sweeping_cones(F: Fan, a: ClassLike) -> List[Cone]:
    """조건을 만족하는 τ 전체 (a 의 양의 배수인 기약 곡선이 V(τ) 를 훑을 수 있는 뿔)."""
    return [t for t in sorted(F.cones, key=lambda c: (len(c), c)) if check_curve_conditions(F, t, a)]


def construct_curve_witness(F: Fan, tau: Iterable[int], a: ClassLike) -> CurveWitness:
    t = as_cone(tau)
    target = coefficients_of(a)
    report = check_curve_conditions(F, t, target)
    if not report:
        raise CurveConditionError(report.condition, report.index, report.message)
    scale = denominator_lcm(target)
    integral = tuple(int(scale * x) for x in target)

    if not t:
        markers: Dict[int, int] = {}
        for i, e in enumerate(integral):
            if e > 0:
                markers[i] = len(markers) + 1
        body: Union[SweepAll, OnSubvariety] = SweepAll(integral, markers)
    else:
        q = quotient_fan(F, t)
        inner_target = [0] * q.quotient_fan.num_rays
        for i, img in q.ray_map.items():
            inner_target[img.index] = integral[i] * img.multiplier
        inner = construct_curve_witness(q.quotient_fan, (), inner_target)
        body = OnSubvariety(q, inner)

    witness = CurveWitness(F, target, scale, t, body)
    if not witness.class_matches_target():
        raise ToricError(f"witness class does not reproduce target on {list(t)}")
    return witness


# ──────────────────────────────────────────────────────────────
# 사영성 인증서
# ──────────────────────────────────────────────────────────────

def projectivity_certificate(F: Fan) -> Union[ProjectivityCertificate, NonProjectivityReport]:
    """벽 곡선류 a_w 에 대해 a_w · h ≥ t 인 높이 h 에서 t 최대화 (엄격 볼록 지지 함수)."""
    walls = wall_curve_classes(F)
    r, n = F.num_rays, F.rank
    wall_list = list(walls.items())
    result = maximize_margin(r, [a for _, a in wall_list], free=range(r))
    margin = result.x[-1] if result.is_optimal else Fraction(0)
    if margin > 0:
        heights = tuple(result.x[:r])
        functionals = {}
        for sigma in F.max_cones:
            rows = [F.rays[i] for i in sigma]
            functionals[sigma] = solve_linear(rows, [heights[i] for i in sigma], n)
        cert = ProjectivityCertificate(F, heights, functionals, _certificate_margin(F, heights, functionals))
        logger.debug(f"projectivity certificate for {F.name}: margin {cert.margin}")
        return cert

    # 쌍대 인증서: y ≥ 0, Σ y = 1, Σ y_w a_w = 0
    m = len(wall_list)
    A_eq = [[a[i] for _, a in wall_list] for i in range(r)] + [[1] * m]
    b_eq = [0] * r + [1]
    y = find_feasible_point(m, A_eq=A_eq, b_eq=b_eq)
    weights = {w: y[j] for j, (w, _) in enumerate(wall_list) if y is not None and y[j] != 0}
    logger.info(f"fan {F.name} is not projective")
    return NonProjectivityReport(F, weights)


def _certificate_margin(F: Fan, heights: Vector, functionals: Dict[Cone, Vector]) -> Fraction:
    """모든 벽, 양쪽 방향에서 h_j − ⟨m_σ, v_j⟩ 의 최솟값."""
    values = []
    for sigma in F.max_cones:
        for j_out in sigma:
            wall = tuple(i for i in sigma if i != j_out)
            for other in F.max_cones_containing(wall):
                if other != sigma:
                    j = next(i for i in other if i not in wall)
                    values.append(heights[j] - sum(a * b for a, b in zip(functionals[sigma], F.rays[j])))
    return min(values) if values else Fraction(1)


# ──────────────────────────────────────────────────────────────
# 사영적 소수정
# ──────────────────────────────────────────────────────────────

def _normalize_s(tau: Cone, rays_s: Sequence[int]) -> Tuple[int, ...]:
    """τ 의 광선을 앞에 두고 나머지는 주어진 순서 유지."""
    rest = []
    for i in rays_s:
        if i not in tau and i not in rest:
            rest.append(int(i))
    return tuple(tau) + tuple(rest)


def check_modification_hypotheses(F: Fan, tau: Iterable[int], rays_s: Sequence[int]) -> Tuple[int, ...]:
    """가정 검사 후 정규화된 S 반환. 위반 시 HypothesisError (가정 이름 포함)."""
    t = as_cone(tau)
    if t not in F.cones:
        raise HypothesisError("tau_is_cone", f"{list(t)} is not a cone of the fan")
    if not set(t).issubset(rays_s):
        raise HypothesisError("tau_in_s", f"rays of {list(t)} must belong to S")
    S = _normalize_s(t, rays_s)
    k, s, n = len(t), len(S), F.rank
    if s <= k + 1:
        raise HypothesisError("size", "s > k+1 required")
    if rank([F.rays[i] for i in S[:-1]], n) != s - 1:
        raise HypothesisError("independence", f"rays {list(S[:-1])} are not linearly independent")

    # Σ_{i≤k} a_i v_i − Σ_{i>k} a_i v_i = 0, a_i ≥ t, t 최대화
    A_eq = [[F.rays[S[j]][c] * (1 if j < k else -1) for j in range(s)] for c in range(n)]
    units = [[1 if j == i else 0 for j in range(s)] for i in range(s)]
    result = maximize_margin(s, units, A_eq=A_eq, free=range(s))
    if not result.is_optimal or result.x[-1] <= 0:
        raise HypothesisError(
            "positive_relation",
            f"no strictly positive relation between the rays of {list(t)} and {list(S[k:])}",
        )

    cone_s = PolyCone.from_generators(n, [F.rays[i] for i in S])
    for j in range(F.num_rays):
        if j not in S and cone_s.contains(F.rays[j]):
            raise HypothesisError("non_containment", f"ray {j} lies in the cone spanned by S")
    return S


def _face_fan(F: Fan, points: List[Vector]) -> Tuple[Optional[Fan], Tuple[int, ...], str]:
    """Q = conv(points) 의 면 팬 (꼭짓점 광선만). 단체적이지 않으면 None."""
    Q = polytope_faces(points)
    index_map = vertex_index_map(Q, points)
    vertex_rays = tuple(sorted(index_map))
    local = {orig: k for k, orig in enumerate(vertex_rays)}
    vertex_to_orig = {v: orig for orig, v in index_map.items()}
    cones = []
    for facet in Q.faces_of_dim(F.rank - 1):
        if len(facet.vertices) != F.rank:
            return None, vertex_rays, f"non-simplicial facet {sorted(vertex_to_orig[v] for v in facet.vertices)}"
        cones.append(tuple(sorted(local[vertex_to_orig[v]] for v in facet.vertices)))
    fan = Fan(F.rank, tuple(F.rays[i] for i in vertex_rays), tuple(cones), f"{F.name or 'fan'}:Q")
    return fan, vertex_rays, "ok"


def _subdivide_missing(F: Fan, fan_q: Fan, vertex_rays: Tuple[int, ...]) -> Tuple[Fan, Tuple[int, ...]]:
    """빠진 광선에서 증가하는 인덱스 순으로 별 세분, 원래 인덱스로 재배열."""
    order = list(vertex_rays)
    current = fan_q
    inserted = []
    for j in range(F.num_rays):
        if j not in vertex_rays:
            current = star_subdivision(current, F.rays[j])
            order.append(j)
            inserted.append(j)
    cones = tuple(tuple(sorted(order[i] for i in sigma)) for sigma in current.max_cones)
    target = Fan(F.rank, F.rays, cones, f"{F.name or 'fan'}†", F.divisor_basis)
    return target, tuple(inserted)


def _modification_problems(F: Fan, target: Fan, tau: Cone, S: Sequence[int]) -> List[str]:
    problems = []
    report = validate_fan(target)
    if not report.ok:
        problems.append(f"invalid fan: {', '.join(report.failures())}")
        return problems
    if set(target.rays) != set(F.rays):
        problems.append("ray sets differ")
    if tau not in target.cones:
        problems.append(f"{list(tau)} is not a cone of the modified fan")
        return problems
    missing = sorted(set(S) - set(adjacent_rays(target, tau)))
    if missing:
        problems.append(f"rays {missing} are not adjacent to {list(tau)}")
    return problems


def verify_small_modification(mod: SmallModification) -> List[str]:
    """소수정 불변식 전체 재검사 (문제 목록, 비어 있으면 통과)."""
    problems = _modification_problems(mod.source, mod.target, mod.tau, mod.rays_s)
    if mod.target.rays != mod.source.rays:
        problems.append("target rays are not in source order")
    if not mod.certificate.verify():
        problems.append("projectivity certificate does not verify")
    return problems


def _try_parameters(
    F: Fan, tau: Cone, S: Tuple[int, ...], p: Fraction, q: Fraction, epsilons: Dict[int, Fraction], check_faces: bool
) -> Tuple[Optional[SmallModification], str]:
    scales = {i: (p if i in tau else q if i in S else epsilons[i]) for i in range(F.num_rays)}
    points = [tuple(scales[i] * x for x in F.rays[i]) for i in range(F.num_rays)]
    fan_q, vertex_rays, status = _face_fan(F, points)
    if fan_q is None:
        return None, status
    if check_faces:
        local = {orig: k for k, orig in enumerate(vertex_rays)}
        for i in S[len(tau):]:
            face = [j for j in S if j != i]
            if any(j not in local for j in face) or not fan_q.is_cone(local[j] for j in face):
                return None, f"face {face} missing from the face fan"
    target, inserted = _subdivide_missing(F, fan_q, vertex_rays)
    problems = _modification_problems(F, target, tau, S)
    if problems:
        return None, "; ".join(problems)
    cert = projectivity_certificate(target)
    if not cert.projective or not cert.verify():
        return None, "no projectivity certificate"
    mod = SmallModification(F, target, tau, S, p, q, epsilons, fan_q, vertex_rays, inserted, (), cert)
    return mod, "ok"


def construct_small_modification(
    F: Fan,
    tau: Iterable[int],
    rays_s: Sequence[int],
    schedule_steps: Optional[int] = None,
    p_base: Optional[int] = None,
    epsilon_base: Optional[int] = None,
) -> SmallModification:
    """τ 를 포함하고 S 의 광선이 모두 τ 에 인접한 사영적 완비 단체 팬 Δ†.

    1. 가정 검사
    2. 섭동 없는 시도: Q = conv{p·v_τ, q·v_(S∖τ), v_rest}
    3. 섭동 일정: p = p_base^(step+1), ε_j = 1/(B·j), B = epsilon_base^(step+1)
    4. 각 시도에서 Δ_Q 를 만들고 빠진 광선에서 별 세분, 결과 불변식과 인증서 검증
    """
    settings = get_settings()
    schedule_steps = settings.schedule_steps if schedule_steps is None else schedule_steps
    p_base = settings.p_base if p_base is None else p_base
    epsilon_base = settings.epsilon_base if epsilon_base is None else epsilon_base

    t = as_cone(tau)
    S = check_modification_hypotheses(F, t, rays_s)
    others = [j for j in range(F.num_rays) if j not in S]
    q = Fraction(1)
    attempts: List[ScheduleAttempt] = []

    schedule = [(0, Fraction(p_base), {j: Fraction(1) for j in others}, None)]
    for step in range(schedule_steps):
        B = epsilon_base ** (step + 1)
        eps = {j: Fraction(1, B * (pos + 1)) for pos, j in enumerate(others)}
        schedule.append((step + 1, Fraction(p_base ** (step + 1)), eps, B))

    for step, p, eps, B in schedule:
        mod, outcome = _try_parameters(F, t, S, p, q, eps, check_faces=B is not None)
        attempts.append(ScheduleAttempt(step, p, q, B, outcome))
        logger.debug(f"small modification attempt {step}: p={p}, B={B}: {outcome}")
        if mod is not None:
            mod = SmallModification(
                mod.source, mod.target, mod.tau, mod.rays_s, mod.p, mod.q, mod.epsilons,
                mod.face_fan, mod.face_fan_rays, mod.subdivisions, tuple(attempts), mod.certificate,
            )
            logger.info(
                f"small modification of {F.name} at {list(t)} with S={list(S)}: "
                f"{len(mod.target.max_cones)} maximal cones after {len(attempts)} attempt(s)"
            )
            return mod

    raise ScheduleExhaustedError(
        f"no small modification found for tau={list(t)}, S={list(S)} after {len(attempts)} attempts",
        [f"step {a.step}: {a.outcome}" for a in attempts],
    )
