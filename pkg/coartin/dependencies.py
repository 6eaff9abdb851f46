import os

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

from coartin.errors import InvalidInputError
from coartin.services import ClassificationService


# Runtime settings read from the environment (and a local .env file, if present)
class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_m: int = Field(default=20, ge=2)
    log_level: str = "WARNING"


_settings = None
_classification_service = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        load_dotenv()
        raw_max_m = os.getenv("COARTIN_MAX_M", "20").strip()
        if not raw_max_m.isdigit():
            raise InvalidInputError(f"COARTIN_MAX_M must be a positive integer, got '{raw_max_m}'")
        _settings = Settings(
            max_m=int(raw_max_m),
            log_level=os.getenv("COARTIN_LOG_LEVEL", "WARNING").upper(),
        )
    return _settings


def get_classification_service() -> ClassificationService:
    global _classification_service
    if _classification_service is None:
        _classification_service = ClassificationService(max_m=get_settings().max_m)
    return _classification_service


def reset() -> None:
    """Drops the cached singletons so the next call re-reads the environment."""
    global _settings, _classification_service
    _settings = None
    _classification_service = None
