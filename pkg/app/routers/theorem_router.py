"""극선 분해 & 정리 검증 라우터."""
from fastapi import APIRouter, HTTPException
from app.models.errors import ToricError
from app.models.report_model import DecomposeRequest, DecompositionResponse, LevelRequest, TheoremResponse
from app.services.report_service import ReportService

router = APIRouter()
report_service = ReportService()


@router.post("/decompose", response_model=DecompositionResponse)
def decompose(request: DecomposeRequest):
    try:
        F = report_service.load(request, allow_paths=False)
        return report_service.decompose(F, request.ell, request.curve_class)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/verify", response_model=TheoremResponse)
def verify(request: LevelRequest):
    """Amp^(n−k)∨ = Σ Mov_k(X, X†) 양방향 검증. verdict 가 "failed" 여도 200 을 반환한다."""
    try:
        return report_service.theorem(report_service.load(request, allow_paths=False), request.k)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))
