# termsurv/config.py
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # .env 파일과 TERMSURV_ 접두사 환경 변수로 수치 기본값을 덮어쓸 수 있습니다.
    # CLI 플래그가 항상 우선합니다.
    model_config = SettingsConfigDict(
        env_file='.env',
        env_file_encoding='utf-8',
        env_prefix='TERMSURV_',
        case_sensitive=False,
        extra='ignore',
    )

    # 적분 설정 (모형 평가용)
    QUAD_REL_TOL: float = 1e-10
    QUAD_ABS_TOL: float = 1e-12
    QUAD_MAX_SUBDIVISIONS: int = 500

    # 이중 적분은 비용 때문에 느슨하게
    DOUBLE_QUAD_REL_TOL: float = 1e-8
    DOUBLE_QUAD_ABS_TOL: float = 1e-10

    # 최적화 설정
    FIT_MAX_ITER: int = 4000
    FIT_F_TOL: float = 1e-9
    FIT_X_TOL: float = 1e-7
    FIT_RESTARTS: int = 5
    FIT_JITTER: float = 0.2
    FIT_SEED: int = 20240601

    # 독립성 경계
    ALPHA_BOUNDARY: float = 1e-4

    # 로깅 설정
    LOG_LEVEL: str = "INFO"
    LOG_FILE: str | None = None


settings = Settings()
