"""인자류 / 곡선류 뿔 라우터 (Amp^k, Amp^k∨, Mov_k, 안정 기저 궤적, P_D)."""
from fastapi import APIRouter, HTTPException
from app.models.errors import ToricError
from app.models.report_model import (
    BaseLocusResponse,
    ClassesResponse,
    ConeResponse,
    DivisorRequest,
    FanRequest,
    LevelRequest,
    PolytopeResponse,
)
from app.services.report_service import ReportService

router = APIRouter()
report_service = ReportService()


@router.post("/summary", response_model=ClassesResponse)
def classes_summary(request: FanRequest):
    try:
        return report_service.classes(report_service.load(request, allow_paths=False))
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/amp", response_model=ConeResponse)
def amp(request: LevelRequest):
    """Amp^k (N¹ 좌표)."""
    try:
        return report_service.amp(report_service.load(request, allow_paths=False), request.k)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/ampdual", response_model=ConeResponse)
def amp_dual(request: LevelRequest):
    """Amp^k∨ (R^r 안의 곡선 관계 공간)."""
    try:
        return report_service.amp_dual(report_service.load(request, allow_paths=False), request.k)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/mov", response_model=ConeResponse)
def mov(request: LevelRequest):
    try:
        return report_service.mov(report_service.load(request, allow_paths=False), request.k)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/sbl", response_model=BaseLocusResponse)
def stable_base_locus(request: DivisorRequest):
    """안정 기저 궤적 B(D). k 가 있으면 dim B(D) < k 판정과 곡선 반례까지 반환한다."""
    try:
        F = report_service.load(request, allow_paths=False)
        return report_service.base_locus(F, request.divisor, request.k)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/polytope", response_model=PolytopeResponse)
def divisor_polytope(request: DivisorRequest):
    try:
        return report_service.polytope(report_service.load(request, allow_paths=False), request.divisor)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))
