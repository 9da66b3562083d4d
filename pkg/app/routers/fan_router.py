"""팬 검증 & 내장 예제 라우터."""
from fastapi import APIRouter, HTTPException
from app.models.errors import ToricError
from app.models.report_model import ExamplesResponse, FanRequest, ValidationResponse
from app.services.report_service import ReportService

router = APIRouter()
report_service = ReportService()


@router.post("/validate", response_model=ValidationResponse)
def validate_fan(request: FanRequest):
    """원시성 / 단체성 / 팬 조건 / 완비성을 검사한다."""
    try:
        F = report_service.load(request, allow_paths=False)
        return report_service.validate(F)
    except (ToricError, ValueError) as ve:
        raise HTTPException(status_code=400, detail=str(ve))
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@router.get("/examples", response_model=ExamplesResponse)
def list_examples():
    return report_service.examples()
