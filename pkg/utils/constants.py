"""
Constants and configuration
"""
import os

from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    return int(raw) if raw not in (None, "") else default


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    return float(raw) if raw not in (None, "") else default


def _env_flag(name: str, default: bool = False) -> bool:
    raw = os.getenv(name)
    if raw in (None, ""):
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


ENV_PREFIX = "WEILKIT_"


# ===== EXACT ARITHMETIC =====
MAX_CYCLO_ORDER = _env_int(ENV_PREFIX + "MAX_CYCLO_ORDER", 10**6)


# ===== NUMERICS =====
DEFAULT_PRECISION = _env_int(ENV_PREFIX + "PRECISION", 53)
MIN_PRECISION = 53
DEFAULT_TOLERANCE = _env_float(ENV_PREFIX + "TOL", 1e-6)
TAIL_SAFETY_FACTOR = 4
PRECISION_ESCALATIONS = _env_int(ENV_PREFIX + "PRECISION_ESCALATIONS", 3)


# ===== WORKERS =====
DEFAULT_THREADS = _env_int(ENV_PREFIX + "THREADS", 1)


# ===== WITT INDEX =====
WITNESS_SEARCH_FREE_COORDS = 4
WITNESS_SEARCH_BUDGET = _env_int(ENV_PREFIX + "WITNESS_SEARCH_BUDGET", 200_000)


# ===== LOGGING =====
LOG_LEVEL = os.getenv(ENV_PREFIX + "LOG_LEVEL", "WARNING")
LOG_JSON = _env_flag(ENV_PREFIX + "LOG_JSON")


# ===== DOCUMENTS =====
EXPANSION_MAGIC = "# weilkit-expansion v1"
LATTICE_CASES = ("orthogonal", "unitary")
