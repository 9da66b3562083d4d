"""분해 엔진과 정리 검증.

- decompose_extremal_ray : Amp^ℓ∨ 의 극선 → (σ, τ, 소수정, 곡선 증거)
- verify_theorem : Amp^(n−k)∨ = Σ Mov_k(X, X†) 의 양방향 포함 확인
- stable_base_locus_dim_test : dim B(D) < k 판정과 음의 교차수 곡선 반례
"""
from __future__ import annotations

import logging
from typing import Iterable, List, Optional

from tqdm import tqdm

from app.config.settings import get_settings
from app.models.classes import ClassLike, coefficients_of
from app.models.errors import HypothesisError, NotExtremalError, ToricError
from app.models.fan import Fan, as_cone
from app.models.theorem import BaseLocusTest, Decomposition, ModificationCheck, TheoremReport
from app.services.classes_service import (
    amp_cone,
    amp_dual_cone,
    class_spaces,
    curve_cone_in_dual_coordinates,
    gamma_dual_cone,
    mov_cone,
    mov_cone_via,
    pair,
    stable_base_locus,
)
from app.services.construct_service import (
    check_modification_hypotheses,
    construct_curve_witness,
    construct_small_modification,
)
from app.services.fan_service import cones_of_dim
from app.utils.polyhedra import PolyCone, dual_cone, extremal_rays, sum_all
from app.utils.ratlinalg import Vector

logger = logging.getLogger(__name__)


def _format(v: Iterable) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def decompose_extremal_ray(
    F: Fan,
    ell: int,
    c: ClassLike,
    schedule_steps: Optional[int] = None,
    p_base: Optional[int] = None,
    epsilon_base: Optional[int] = None,
) -> Decomposition:
    """극선 c 를 소수정 위 곡선 증거로 분해.

    1. c 가 극선인 ℓ-뿔 σ 탐색 (정렬 순서상 첫 번째)
    2. τ = {a_i < 0} 가 생성하는 σ 의 면
    3. τ = 0 이면 F 위에서 바로 증거 구성
    4. 아니면 S = τ 의 광선 + 양의 광선, 가정 확인 후 소수정 Δ† 와 그 위의 증거 구성
    """
    if ell < 0 or ell > F.rank - 1:
        raise ValueError(f"ell = {ell} out of range 0..{F.rank - 1}")
    a = coefficients_of(c)
    if len(a) != F.num_rays or not class_spaces(F).is_curve_class(a):
        raise NotExtremalError(f"not extremal: {_format(a)} is not a curve class")
    if not amp_dual_cone(F, ell).is_extremal(a):
        raise NotExtremalError(f"not extremal: {_format(a)} does not span an extremal ray of Amp^{ell} dual")

    sigma = next((s for s in cones_of_dim(F, ell) if gamma_dual_cone(F, s).is_extremal(a)), None)
    if sigma is None:
        raise NotExtremalError(f"not extremal: no {ell}-cone sigma with {_format(a)} extremal in its dual")

    tau = as_cone(i for i, x in enumerate(a) if x < 0)
    if not tau:
        witness = construct_curve_witness(F, (), a)
        return Decomposition(F, a, ell, sigma, tau, None, witness)

    positives = sorted(i for i, x in enumerate(a) if x > 0)
    S = tuple(tau) + tuple(positives)
    try:
        check_modification_hypotheses(F, tau, S)
    except HypothesisError as e:
        raise NotExtremalError(f"not extremal: {e}") from e

    mod = construct_small_modification(F, tau, S, schedule_steps, p_base, epsilon_base)
    witness = construct_curve_witness(mod.target, tau, a)
    logger.info(f"decomposed {_format(a)} at level {ell}: sigma={list(sigma)}, tau={list(tau)}")
    return Decomposition(F, a, ell, sigma, tau, mod, witness)


def _dual_contains_generators(dual_amp: PolyCone, F: Fan, C: PolyCone) -> bool:
    """C 의 모든 생성자(및 ± 선형성)가 Amp 와 음이 아닌 교차수를 갖는지."""
    spaces = class_spaces(F)
    gens = list(C.rays) + list(C.lineality) + [tuple(-x for x in l) for l in C.lineality]
    return all(dual_amp.contains(spaces.curve_dual_coordinates(g)) for g in gens)


def check_natural_inclusions(F: Fan, k: int) -> bool:
    """Mov_k ⊆ Amp^(n−k)∨ 그리고 Amp^(n−k) ⊆ Mov_k∨."""
    ell = F.rank - k
    mov = mov_cone(F, k)
    forward = amp_dual_cone(F, ell).contains_cone(mov)
    backward = dual_cone(curve_cone_in_dual_coordinates(F, mov)).contains_cone(amp_cone(F, ell))
    return forward and backward


def strict_inclusion_witness(F: Fan, k: int) -> List[Vector]:
    """Mov_k(X) 에 속하지 않는 Amp^(n−k)∨ 의 극선들."""
    mov = mov_cone(F, k)
    return [c for c in extremal_rays(amp_dual_cone(F, F.rank - k)) if not mov.contains(c)]


def verify_theorem(
    F: Fan,
    k: int,
    show_progress: Optional[bool] = None,
    schedule_steps: Optional[int] = None,
    p_base: Optional[int] = None,
    epsilon_base: Optional[int] = None,
) -> TheoremReport:
    if k < 1 or k > F.rank:
        raise ValueError(f"k = {k} out of range 1..{F.rank}")
    show_progress = get_settings().show_progress if show_progress is None else show_progress
    ell = F.rank - k
    rays = extremal_rays(amp_dual_cone(F, ell))
    report = TheoremReport(F, k, rays)

    # 정방향: 모든 극선 분해
    for c in tqdm(rays, desc=f"decompose Amp^{ell} dual", disable=not show_progress):
        try:
            report.decompositions.append(decompose_extremal_ray(F, ell, c, schedule_steps, p_base, epsilon_base))
        except ToricError as e:
            logger.error(f"decomposition of {_format(c)} failed: {e}", exc_info=True)
            report.failures.append(f"{_format(c)}: {e}")

    # 역방향: Mov_k(X, X†) 생성자 · Amp^ℓ ≥ 0
    dual_amp = dual_cone(amp_cone(F, ell))
    report.source_mov_ok = _dual_contains_generators(dual_amp, F, mov_cone(F, k))
    amp1 = amp_cone(F, 1) if F.rank >= 2 else None
    seen = set()
    for d in report.decompositions:
        mod = d.modification
        if mod is None or mod.target.max_cones in seen:
            continue
        seen.add(mod.target.max_cones)
        mov_ok = _dual_contains_generators(dual_amp, F, mov_cone_via(F, mod.target, k))
        amp1_ok = amp_cone(mod.target, 1).same_set(amp1) if amp1 is not None else None
        report.modification_checks.append(ModificationCheck(mod, mov_ok, amp1_ok))

    report.natural_inclusions = check_natural_inclusions(F, k)
    report.strict_inclusion_rays = strict_inclusion_witness(F, k)
    logger.info(
        f"theorem check on {F.name} (k={k}): {report.verdict}, {len(rays)} extremal rays, "
        f"{len(report.modification_checks)} small modification(s)"
    )
    return report


def modification_mov_sum(F: Fan, report: TheoremReport) -> PolyCone:
    """F 자신과 보고서의 소수정들에 대한 Σ Mov_k(X, X†)."""
    cones = [mov_cone(F, report.k)] + [mov_cone_via(F, m.modification.target, report.k) for m in report.modification_checks]
    return sum_all(F.num_rays, cones)


def stable_base_locus_dim_test(F: Fan, D: ClassLike, k: int) -> BaseLocusTest:
    """dim B(D) < k. 거짓이면 k 차원 V(τ) ⊆ B(D) 와 (f(D) · C) < 0 인 곡선 증거를 함께 반환."""
    if k < 1 or k > F.rank:
        raise ValueError(f"k = {k} out of range 1..{F.rank}")
    d = coefficients_of(D)
    locus = stable_base_locus(F, d)
    if locus.dimension_less_than(k):
        return BaseLocusTest(d, k, locus, True)

    ell = F.rank - k
    tau0 = next(t for t in locus.member_cones if len(t) <= ell)
    tau = next(t for t in cones_of_dim(F, ell) if set(tau0).issubset(t))
    negative = [(c, pair(d, c)) for c in extremal_rays(amp_dual_cone(F, ell)) if pair(d, c) < 0]
    if not negative:
        raise ToricError(f"no extremal ray of Amp^{ell} dual pairs negatively with {_format(d)}")
    # 곡선이 훑는 V(τ_c) 가 V(τ) 를 포함하는 극선 우선 (τ_c = {a_i < 0} ⊆ τ)
    c, value = next(
        ((c, v) for c, v in negative if {i for i, x in enumerate(c) if x < 0} <= set(tau)),
        negative[0],
    )
    decomposition = decompose_extremal_ray(F, ell, c)
    return BaseLocusTest(d, k, locus, False, tau, decomposition, value, swept_cone=decomposition.tau)
