"""FastAPI 진입점 및 전역 초기화 모듈."""
import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from app.config.settings import get_settings
from app.routers.classes_router import router as classes_router
from app.routers.construct_router import router as construct_router
from app.routers.fan_router import router as fan_router
from app.routers.theorem_router import router as theorem_router


def create_app() -> FastAPI:
    settings = get_settings()  # .env 로부터 환경 변수 로드
    logging.basicConfig(level=settings.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    app = FastAPI(title="Toric cones server", version="0.1.0")

    # CORS 설정 (필요 시)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # 라우터 등록
    app.include_router(fan_router, prefix="/fans", tags=["Fans"])
    app.include_router(classes_router, prefix="/classes", tags=["Classes"])
    app.include_router(construct_router, prefix="/construct", tags=["Construct"])
    app.include_router(theorem_router, prefix="/theorem", tags=["Theorem"])

    return app


app = create_app()
