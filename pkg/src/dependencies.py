"""
Shared dependencies for the UC-reduction toolkit
Environment defaults and logging setup

This module is the "composition root" for the app:
- Loads environment variables from `.env`
- Configures logging once for every module
- Resolves numeric defaults (tolerances, singular margin, seed, output directory)
- Wires in the observability layer when it is importable

Where it is used:
- every library module imports `logger`
- `src/models.py` takes its default tolerances and seed from `settings`
- `src/middleware.py` and `src/app.py` check `OBSERVABILITY_ENABLED`
"""

import os
import logging
from dataclasses import dataclass
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

LOG_LEVEL = os.getenv("UCH_LOG_LEVEL", "INFO").strip().upper()

# Configure logging
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format='%(message)s'  # Structured logging format
)
logger = logging.getLogger(__name__)


def _env_float(name: str, default: str) -> float:
    raw = os.getenv(name, default).strip()
    try:
        value = float(raw)
    except ValueError:
        # Fail fast on startup
        raise RuntimeError(f"{name} must be a number, got {raw!r}")
    if value <= 0:
        raise RuntimeError(f"{name} must be positive, got {raw!r}")
    return value


def _env_int(name: str, default: str) -> int:
    raw = os.getenv(name, default).strip()
    try:
        return int(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    rtol: float
    atol: float
    singular_margin: float
    seed: int
    out_dir: str
    mode: str
    observability: bool


def get_settings() -> Settings:
    """Build settings from environment"""
    mode = os.getenv("UCH_MODE", "exact").strip().lower()
    if mode not in {"exact", "float"}:
        raise RuntimeError(f"UCH_MODE must be 'exact' or 'float', got {mode!r}")
    return Settings(
        rtol=_env_float("UCH_RTOL", "1e-10"),
        atol=_env_float("UCH_ATOL", "1e-12"),
        singular_margin=_env_float("UCH_SINGULAR_MARGIN", "1e-3"),
        seed=_env_int("UCH_SEED", "0"),
        out_dir=os.getenv("UCH_OUT_DIR", "./reports").strip(),
        mode=mode,
        observability=os.getenv("UCH_OBSERVABILITY", "true").strip().lower() in {"1", "true", "yes"},
    )


settings = get_settings()

LIBRARY_VERSION = "0.3.0"

# Observability imports
try:
    if not settings.observability:
        raise ImportError("disabled by UCH_OBSERVABILITY")
    from observability import (
        metrics_collector,
        alert_manager,
        log_structured,
    )
    OBSERVABILITY_ENABLED = True
    logger.debug("Observability module loaded")
except ImportError as e:
    OBSERVABILITY_ENABLED = False
    metrics_collector = None
    alert_manager = None
    log_structured = None
    logger.debug(f"Observability module not loaded: {e}")
