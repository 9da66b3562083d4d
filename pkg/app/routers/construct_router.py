"""곡선 증거 & 사영적 소수정 라우터."""
from fastapi import APIRouter, HTTPException
from app.models.errors import ToricError
from app.models.report_model import SmallModRequest, SmallModResponse, WitnessRequest, WitnessResponse
from app.services.report_service import ReportService

router = APIRouter()
report_service = ReportService()


@router.post("/witness", response_model=WitnessResponse)
def curve_witness(request: WitnessRequest):
    """V(τ) 를 쓸고 지나가는 기약 곡선의 구성 기록을 반환한다.

    조건 (1)–(3) 위반은 400 으로, 위반된 조건 번호와 광선 인덱스를 메시지에 담는다.
    """
    try:
        F = report_service.load(request, allow_paths=False)
        return report_service.witness(F, request.tau, request.curve_class)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/smallmod", response_model=SmallModResponse)
def small_modification(request: SmallModRequest):
    try:
        F = report_service.load(request, allow_paths=False)
        return report_service.small_modification(F, request.tau, request.rays)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))
