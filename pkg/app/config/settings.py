"""애플리케이션 전역 설정 (Pydantic Settings)."""
from functools import lru_cache
from pydantic_settings import BaseSettings
from dotenv import load_dotenv
import os

load_dotenv()

class Settings(BaseSettings):
    # 로깅
    log_level: str = os.environ.get("LOG_LEVEL", "INFO")

    # 팬 문서 파싱: True 이면 원시가 아닌 광선을 오류로 처리
    strict_fan_parsing: bool = os.environ.get("STRICT_FAN_PARSING", False)

    # 완비성 교차 검증 (결정적 의사난수 방향)
    completeness_samples: int = os.environ.get("COMPLETENESS_SAMPLES", 100)
    random_seed: int = os.environ.get("RANDOM_SEED", 20061)

    # 소수정(small modification) 매개변수 탐색
    schedule_steps: int = os.environ.get("SCHEDULE_STEPS", 8)
    p_base: int = os.environ.get("P_BASE", 4)
    epsilon_base: int = os.environ.get("EPSILON_BASE", 8)

    # 기저 궤적 오라클
    base_locus_m_max: int = os.environ.get("BASE_LOCUS_M_MAX", 12)

    # 정리 검증 진행률 표시 (tqdm)
    show_progress: bool = os.environ.get("SHOW_PROGRESS", False)

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()
