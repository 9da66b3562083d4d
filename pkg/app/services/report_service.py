"""CLI 와 HTTP 라우터가 공유하는 보고서 생성 로직.

도메인 객체(Fan, PolyCone, CurveWitness, ...) → report_model 의 Pydantic 응답 모델.
"""
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel

from app.config.builtin_fans import BUILTIN_FANS, ONE_BASED_LABELS
from app.models.construct import CurveWitness, SmallModification, SweepAll
from app.models.errors import FanDocumentError
from app.models.fan import Fan
from app.models.report_model import (
    BaseLocusResponse,
    CertificateReport,
    ClassesResponse,
    ConeResponse,
    DecompositionResponse,
    ExamplesResponse,
    FanRequest,
    FanSummary,
    ModificationCheckReport,
    PolytopeResponse,
    ScheduleAttemptReport,
    SmallModResponse,
    TheoremResponse,
    ValidationResponse,
    WallClass,
    WitnessResponse,
    WitnessStep,
)
from app.models.theorem import Decomposition
from app.services.classes_service import (
    amp_cone,
    amp_dual_cone,
    class_spaces,
    divisor_polytope,
    mov_cone,
    stable_base_locus,
    wall_curve_classes,
)
from app.services.construct_service import (
    construct_curve_witness,
    construct_small_modification,
    projectivity_certificate,
    verify_small_modification,
)
from app.services.fan_service import validate_fan
from app.services.theorem_service import decompose_extremal_ray, stable_base_locus_dim_test, verify_theorem
from app.utils.parser import builtin_fan, document_to_fan, fan_to_document, load_fan
from app.utils.polyhedra import PolyCone
from app.utils.ratlinalg import is_integral

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────────────────────
# 입력 / 출력 변환 헬퍼
# ──────────────────────────────────────────────────────────────

def rational(x) -> str:
    return str(Fraction(x))


def rationals(v: Iterable) -> List[str]:
    return [rational(x) for x in v]


def parse_rationals(text: str) -> List[Fraction]:
    """"1,1,-3/2" → [1, 1, -3/2]."""
    if not text.strip():
        return []
    try:
        return [Fraction(part.strip()) for part in text.split(",")]
    except ValueError as e:
        raise FanDocumentError(f"cannot parse rational list '{text}'", field="class") from e


def parse_indices(text: str) -> List[int]:
    """"0,3,7" → [0, 3, 7]. 빈 문자열은 영뿔."""
    if not text.strip():
        return []
    try:
        return [int(part.strip()) for part in text.split(",")]
    except ValueError as e:
        raise FanDocumentError(f"cannot parse index list '{text}'", field="indices") from e


def _one_based(F: Fan, cones: Iterable[Sequence[int]]) -> Optional[List[List[int]]]:
    if F.name not in ONE_BASED_LABELS:
        return None
    return [[i + 1 for i in c] for c in cones]


def render_text(model: BaseModel) -> str:
    """응답 모델 → 사람이 읽는 텍스트. 값은 JSON 출력과 같은 문자열을 쓴다."""
    lines: List[str] = []
    _render(model.model_dump(), 0, lines)
    return "\n".join(lines)


def _scalar(key: str, value: Any) -> str:
    if value is None:
        return "-inf" if key == "dimension" else "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _is_flat(values: list) -> bool:
    return all(not isinstance(v, (list, dict)) for v in values)


def _render(data: Dict[str, Any], indent: int, lines: List[str]) -> None:
    pad = "  " * indent
    for key, value in data.items():
        if isinstance(value, dict):
            if value and _is_flat(list(value.values())):
                lines.append(f"{pad}{key}: " + ", ".join(f"{k}={_scalar(k, v)}" for k, v in value.items()))
            else:
                lines.append(f"{pad}{key}:")
                _render(value, indent + 1, lines)
        elif isinstance(value, list):
            if _is_flat(value):
                lines.append(f"{pad}{key}: (" + ",".join(_scalar(key, v) for v in value) + ")")
                continue
            lines.append(f"{pad}{key}: {len(value)}")
            for item in value:
                if isinstance(item, dict):
                    lines.append(f"{pad}  -")
                    _render(item, indent + 2, lines)
                else:
                    lines.append(f"{pad}  - (" + ",".join(_scalar(key, v) for v in item) + ")")
        else:
            lines.append(f"{pad}{key}: {_scalar(key, value)}")


def _cone_response(label: str, coordinates: str, C: PolyCone) -> ConeResponse:
    return ConeResponse(
        label=label,
        coordinates=coordinates,
        ambient_dim=C.ambient_dim,
        dimension=C.dimension,
        strongly_convex=C.is_strongly_convex,
        rays=[rationals(g) for g in C.rays],
        lineality=[rationals(l) for l in C.lineality],
        inequalities=[rationals(a) for a in C.inequalities],
        equations=[rationals(e) for e in C.equations],
    )


# ──────────────────────────────────────────────────────────────
# 보고서 서비스
# ──────────────────────────────────────────────────────────────

class ReportService:
    def load(self, request: FanRequest, allow_paths: bool = True) -> Fan:
        """요청의 fan(이름/경로) 또는 document 에서 팬을 만든다. HTTP 요청은 내장 이름만 허용."""
        if request.document is not None:
            return document_to_fan(request.document, strict=request.strict)
        if request.fan is None:
            raise FanDocumentError("either 'fan' or 'document' is required", field="fan")
        if not allow_paths:
            return builtin_fan(request.fan)
        return load_fan(request.fan, strict=request.strict)

    def examples(self) -> ExamplesResponse:
        fans = []
        for name in BUILTIN_FANS:
            F = builtin_fan(name)
            fans.append(FanSummary(name=name, rank=F.rank, num_rays=F.num_rays, num_max_cones=len(F.max_cones)))
        return ExamplesResponse(fans=fans)

    def validate(self, F: Fan) -> ValidationResponse:
        report = validate_fan(F)
        return ValidationResponse(
            fan=F.name,
            rank=F.rank,
            num_rays=F.num_rays,
            num_max_cones=len(F.max_cones),
            well_formed=report.well_formed,
            rays_primitive=report.rays_primitive,
            simplicial=report.simplicial,
            compatible=report.compatible,
            complete=report.complete,
            ok=report.ok,
            failures=report.failures(),
            unchecked=report.unchecked(),
            offending=report.offending,
        )

    def classes(self, F: Fan) -> ClassesResponse:
        spaces = class_spaces(F)
        cert = projectivity_certificate(F)
        basis_one_based = _one_based(F, [spaces.basis_indices])
        return ClassesResponse(
            fan=F.name,
            picard_rank=spaces.picard_rank,
            basis_indices=list(spaces.basis_indices),
            basis_one_based=basis_one_based[0] if basis_one_based else None,
            complement_indices=list(spaces.complement_indices),
            divisor_generators=[rationals(g) for g in spaces.divisor_generators],
            curve_basis=[rationals(a) for a in spaces.curve_subspace],
            walls=[WallClass(wall=list(w), curve_class=rationals(a)) for w, a in wall_curve_classes(F).items()],
            projective=cert.projective,
            projectivity_margin=rational(cert.margin) if cert.projective else None,
        )

    def amp(self, F: Fan, k: int) -> ConeResponse:
        return _cone_response(f"Amp^{k}", "N1", amp_cone(F, k))

    def amp_dual(self, F: Fan, k: int) -> ConeResponse:
        return _cone_response(f"Amp^{k} dual", "R^r", amp_dual_cone(F, k))

    def mov(self, F: Fan, k: int) -> ConeResponse:
        return _cone_response(f"Mov_{k}", "R^r", mov_cone(F, k))

    def base_locus(self, F: Fan, divisor: Sequence, k: Optional[int] = None) -> BaseLocusResponse:
        d = [Fraction(x) for x in divisor]
        if k is None:
            locus = stable_base_locus(F, d)
            return BaseLocusResponse(
                fan=F.name,
                divisor=rationals(d),
                member_cones=[list(c) for c in locus.member_cones],
                member_cones_one_based=_one_based(F, locus.member_cones),
                dimension=locus.dimension,
            )

        test = stable_base_locus_dim_test(F, d, k)
        locus = test.locus
        return BaseLocusResponse(
            fan=F.name,
            divisor=rationals(d),
            member_cones=[list(c) for c in locus.member_cones],
            member_cones_one_based=_one_based(F, locus.member_cones),
            dimension=locus.dimension,
            k=k,
            dimension_less_than_k=test.holds,
            subvariety_cone=list(test.subvariety_cone) if test.subvariety_cone is not None else None,
            swept_cone=list(test.swept_cone) if test.swept_cone is not None else None,
            negative_curve=rationals(test.decomposition.c) if test.decomposition is not None else None,
            intersection=rational(test.intersection) if test.intersection is not None else None,
        )

    def polytope(self, F: Fan, divisor: Sequence) -> PolytopeResponse:
        d = [Fraction(x) for x in divisor]
        P = divisor_polytope(F, d)
        return PolytopeResponse(
            divisor=rationals(d),
            empty=P.is_empty,
            dimension=P.dimension,
            vertices=[rationals(v) for v in P.vertices],
            facets=[rationals(list(a) + [b]) for a, b in P.facets],
            lattice_points=[list(u) for u in P.lattice_points()] if is_integral(d) else None,
        )

    def witness(self, F: Fan, tau: Sequence[int], curve_class: Sequence) -> WitnessResponse:
        return self._witness_response(construct_curve_witness(F, tau, [Fraction(x) for x in curve_class]))

    def small_modification(self, F: Fan, tau: Sequence[int], rays: Sequence[int]) -> SmallModResponse:
        return self._modification_response(construct_small_modification(F, tau, rays))

    def decompose(self, F: Fan, ell: int, curve_class: Sequence) -> DecompositionResponse:
        return self._decomposition_response(decompose_extremal_ray(F, ell, [Fraction(x) for x in curve_class]))

    def theorem(self, F: Fan, k: int) -> TheoremResponse:
        report = verify_theorem(F, k)
        return TheoremResponse(
            fan=F.name,
            k=k,
            verdict=report.verdict,
            forward_ok=report.forward_ok,
            reverse_ok=report.reverse_ok,
            natural_inclusions=report.natural_inclusions,
            extremal_rays=[rationals(c) for c in report.extremal_rays],
            decompositions=[self._decomposition_response(d) for d in report.decompositions],
            failures=report.failures,
            modifications=[
                ModificationCheckReport(
                    tau=list(m.modification.tau),
                    rays_s=list(m.modification.rays_s),
                    trivial=m.modification.is_trivial,
                    max_cones=[list(c) for c in m.modification.target.max_cones],
                    mov_generators_ok=m.mov_generators_ok,
                    amp1_invariant=m.amp1_invariant,
                )
                for m in report.modification_checks
            ],
            strict_inclusion_rays=[rationals(c) for c in report.strict_inclusion_rays],
        )

    def _witness_response(self, witness: CurveWitness) -> WitnessResponse:
        steps: List[WitnessStep] = []
        current, depth = witness, 0
        while True:
            step = WitnessStep(
                depth=depth,
                fan=current.fan.name,
                tau=list(current.tau),
                target=rationals(current.target),
                scale=current.scale,
                kind="sweep" if isinstance(current.body, SweepAll) else "subvariety",
            )
            if isinstance(current.body, SweepAll):
                step.exponents = list(current.body.exponents)
                step.markers = {str(i): lam for i, lam in current.body.markers.items()}
                steps.append(step)
                break
            step.multipliers = {str(i): img.multiplier for i, img in current.body.quotient.ray_map.items()}
            steps.append(step)
            current, depth = current.body.inner, depth + 1

        return WitnessResponse(
            target=rationals(witness.target),
            tau=list(witness.tau),
            swept_dimension=witness.swept_dimension,
            depth=witness.depth,
            recomputed=rationals(x / witness.scale for x in witness.recompute()),
            class_matches_target=witness.class_matches_target(),
            steps=steps,
        )

    def _modification_response(self, mod: SmallModification) -> SmallModResponse:
        cert = mod.certificate
        return SmallModResponse(
            source=mod.source.name,
            tau=list(mod.tau),
            rays_s=list(mod.rays_s),
            trivial=mod.is_trivial,
            p=rational(mod.p),
            q=rational(mod.q),
            epsilons={str(j): rational(e) for j, e in sorted(mod.epsilons.items())},
            subdivisions=list(mod.subdivisions),
            target=fan_to_document(mod.target),
            target_one_based=_one_based(mod.source, mod.target.max_cones),
            certificate=CertificateReport(heights=rationals(cert.heights), margin=rational(cert.margin), verified=cert.verify()),
            attempts=[
                ScheduleAttemptReport(step=a.step, p=rational(a.p), q=rational(a.q), epsilon_base=a.epsilon_base, outcome=a.outcome)
                for a in mod.attempts
            ],
            problems=verify_small_modification(mod),
        )

    def _decomposition_response(self, d: Decomposition) -> DecompositionResponse:
        tau_one_based = _one_based(d.fan, [d.tau])
        return DecompositionResponse(
            curve_class=rationals(d.c),
            ell=d.ell,
            sigma=list(d.sigma),
            tau=list(d.tau),
            tau_one_based=tau_one_based[0] if tau_one_based else None,
            swept_dimension=d.swept_dimension,
            modification=self._modification_response(d.modification) if d.modification is not None else None,
            witness=self._witness_response(d.witness),
        )
