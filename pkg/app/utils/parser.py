""" 팬 문서 파싱/직렬화 유틸리티 (JSON + pydantic FanDocument 기반). """
import json
import logging
import os
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from app.config.builtin_fans import BUILTIN_FANS
from app.config.settings import get_settings
from app.models.construct import ProjectivityCertificate, ScheduleAttempt, SmallModification
from app.models.errors import FanDocumentError
from app.models.fan import Fan, as_cone
from app.models.fan_document import (
    AttemptDocument,
    CertificateDocument,
    FanDocument,
    FunctionalDocument,
    SmallModificationDocument,
)
from app.services.fan_service import require_valid
from app.utils.ratlinalg import primitive_vector

logger = logging.getLogger(__name__)

DocumentT = TypeVar("DocumentT", bound=BaseModel)


def _format_vector(v) -> str:
    return "(" + ",".join(str(a) for a in v) + ")"


def document_to_fan(doc: FanDocument, strict: Optional[bool] = None) -> Fan:
    """FanDocument → 검증된 Fan.

    1. 광선 길이 확인, 원시 벡터로 정규화 (strict 모드면 오류)
    2. 중복 광선, 범위 밖 인덱스 거부
    3. validate_fan 통과 여부 확인
    """
    strict = get_settings().strict_fan_parsing if strict is None else strict
    rays: List[tuple] = []
    for i, ray in enumerate(doc.rays):
        if len(ray) != doc.rank:
            raise FanDocumentError(f"ray has length {len(ray)}, expected rank {doc.rank}", field=f"rays[{i}]")
        if all(a == 0 for a in ray):
            raise FanDocumentError("zero vector has no primitive generator", field=f"rays[{i}]")
        prim = tuple(int(a) for a in primitive_vector(ray))
        if list(prim) != list(ray):
            message = f"{_format_vector(ray)} normalized to {_format_vector(prim)}"
            if strict:
                raise FanDocumentError(f"non-primitive ray {message}", field=f"rays[{i}]")
            logger.warning(f"rays[{i}]: {message}")
        if prim in rays:
            raise FanDocumentError(f"duplicate ray {_format_vector(prim)}", field=f"rays[{i}]")
        rays.append(prim)

    for c, cone in enumerate(doc.max_cones):
        for j in cone:
            if j < 0 or j >= len(rays):
                raise FanDocumentError(f"ray index {j} out of range", field=f"max_cones[{c}]")
        if len(set(cone)) != len(cone):
            raise FanDocumentError("repeated ray index", field=f"max_cones[{c}]")

    if doc.divisor_basis is not None:
        for j in doc.divisor_basis:
            if j < 0 or j >= len(rays):
                raise FanDocumentError(f"ray index {j} out of range", field="divisor_basis")

    fan = Fan(
        doc.rank,
        tuple(rays),
        tuple(tuple(c) for c in doc.max_cones),
        doc.name,
        tuple(doc.divisor_basis) if doc.divisor_basis is not None else None,
    )
    return require_valid(fan)


def _load_document(text: str, model: Type[DocumentT]) -> DocumentT:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise FanDocumentError(f"malformed JSON: {e.msg}", field=f"line {e.lineno} column {e.colno}") from e
    try:
        return model.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(p) for p in first["loc"]) or "document"
        raise FanDocumentError(first["msg"], field=location) from e


def parse_fan(text: str, strict: Optional[bool] = None) -> Fan:
    """UTF-8 JSON 텍스트 → Fan. 실패 시 줄/필드 정보를 담은 FanDocumentError."""
    return document_to_fan(_load_document(text, FanDocument), strict=strict)


def fan_to_document(fan: Fan) -> FanDocument:
    return FanDocument(
        rank=fan.rank,
        rays=[list(v) for v in fan.rays],
        max_cones=[list(c) for c in fan.max_cones],
        name=fan.name,
        divisor_basis=list(fan.divisor_basis) if fan.divisor_basis is not None else None,
    )


def serialize_fan(fan: Fan) -> str:
    return fan_to_document(fan).model_dump_json(indent=2, exclude_none=True)


# ──────────────────────────────────────────────────────────────
# 소수정 문서
# ──────────────────────────────────────────────────────────────

def _fraction(text: str, field: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise FanDocumentError(f"cannot parse rational '{text}'", field=field) from e


def _unchecked_fan(doc: FanDocument) -> Fan:
    """검증 없이 Fan 으로. 결과 팬의 결함은 verify_small_modification 이 보고한다."""
    return Fan(
        doc.rank,
        tuple(tuple(r) for r in doc.rays),
        tuple(tuple(c) for c in doc.max_cones),
        doc.name,
        tuple(doc.divisor_basis) if doc.divisor_basis is not None else None,
    )


def modification_to_document(mod: SmallModification) -> SmallModificationDocument:
    cert = mod.certificate
    return SmallModificationDocument(
        source=fan_to_document(mod.source),
        target=fan_to_document(mod.target),
        tau=list(mod.tau),
        rays_s=list(mod.rays_s),
        p=str(mod.p),
        q=str(mod.q),
        epsilons={j: str(e) for j, e in sorted(mod.epsilons.items())},
        face_fan=fan_to_document(mod.face_fan),
        face_fan_rays=list(mod.face_fan_rays),
        subdivisions=list(mod.subdivisions),
        attempts=[
            AttemptDocument(step=a.step, p=str(a.p), q=str(a.q), epsilon_base=a.epsilon_base, outcome=a.outcome)
            for a in mod.attempts
        ],
        certificate=CertificateDocument(
            heights=[str(h) for h in cert.heights],
            functionals=[FunctionalDocument(cone=list(s), m=[str(x) for x in m]) for s, m in sorted(cert.functionals.items())],
            margin=str(cert.margin),
        ),
    )


def document_to_modification(doc: SmallModificationDocument, strict: Optional[bool] = None) -> SmallModification:
    """SmallModificationDocument → SmallModification.

    원본 팬은 document_to_fan 으로 검증하고, 결과 팬과 인증서는 그대로 복원한다.
    """
    source = document_to_fan(doc.source, strict=strict)
    target = _unchecked_fan(doc.target)
    if len(doc.certificate.heights) != target.num_rays:
        raise FanDocumentError(
            f"expected {target.num_rays} heights, got {len(doc.certificate.heights)}", field="certificate.heights"
        )
    heights = tuple(_fraction(h, f"certificate.heights[{i}]") for i, h in enumerate(doc.certificate.heights))
    functionals = {}
    for c, f in enumerate(doc.certificate.functionals):
        location = f"certificate.functionals[{c}]"
        if len(f.m) != target.rank:
            raise FanDocumentError(f"functional has length {len(f.m)}, expected rank {target.rank}", field=location)
        functionals[as_cone(f.cone)] = tuple(_fraction(x, location) for x in f.m)
    certificate = ProjectivityCertificate(target, heights, functionals, _fraction(doc.certificate.margin, "certificate.margin"))
    return SmallModification(
        source=source,
        target=target,
        tau=as_cone(doc.tau),
        rays_s=tuple(doc.rays_s),
        p=_fraction(doc.p, "p"),
        q=_fraction(doc.q, "q"),
        epsilons={j: _fraction(e, f"epsilons.{j}") for j, e in doc.epsilons.items()},
        face_fan=_unchecked_fan(doc.face_fan),
        face_fan_rays=tuple(doc.face_fan_rays),
        subdivisions=tuple(doc.subdivisions),
        attempts=tuple(
            ScheduleAttempt(a.step, _fraction(a.p, "attempts.p"), _fraction(a.q, "attempts.q"), a.epsilon_base, a.outcome)
            for a in doc.attempts
        ),
        certificate=certificate,
    )


def serialize_modification(mod: SmallModification) -> str:
    return modification_to_document(mod).model_dump_json(indent=2, exclude_none=True)


def parse_modification(text: str, strict: Optional[bool] = None) -> SmallModification:
    return document_to_modification(_load_document(text, SmallModificationDocument), strict=strict)


@lru_cache(maxsize=None)
def builtin_fan(name: str) -> Fan:
    if name not in BUILTIN_FANS:
        raise FanDocumentError(f"unknown builtin fan '{name}'. Must be one of {list(BUILTIN_FANS.keys())}", field="fan")
    return document_to_fan(FanDocument.model_validate(BUILTIN_FANS[name]))


def load_fan(name_or_path: str, strict: Optional[bool] = None) -> Fan:
    """내장 이름 또는 파일 경로에서 팬 로드."""
    if name_or_path in BUILTIN_FANS:
        return builtin_fan(name_or_path)
    if not os.path.exists(name_or_path):
        raise FanDocumentError(f"no builtin fan or file named '{name_or_path}'", field="fan")
    with open(name_or_path, encoding="utf-8") as f:
        return parse_fan(f.read(), strict=strict)
