"""
Runtime configuration read from the environment (and a .env file, loaded by
the entry points with python-dotenv).
"""
import os
from dataclasses import dataclass

_TRUTHY = {"1", "true", "yes", "on"}


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def debug_enabled() -> bool:
    """Whether precondition cross-checks on known rationals are active."""
    return os.getenv("SDREAL_DEBUG", "").strip().lower() in _TRUTHY


@dataclass(frozen=True)
class Settings:
    digits: int = 20
    trials: int = 3
    seed: int = 2021
    debug: bool = False
    log_level: str = "WARNING"
    recursion_limit: int = 200_000
    stack_mb: int = 512
    oracle_samples: int = 50
    oracle_depth: int = 24


def load_settings() -> Settings:
    """Build Settings from SDREAL_* environment variables."""
    return Settings(
        digits=_int_env("SDREAL_DIGITS", Settings.digits),
        trials=_int_env("SDREAL_TRIALS", Settings.trials),
        seed=_int_env("SDREAL_SEED", Settings.seed),
        debug=debug_enabled(),
        log_level=os.getenv("SDREAL_LOG_LEVEL", Settings.log_level).upper(),
        recursion_limit=_int_env("SDREAL_RECURSION_LIMIT", Settings.recursion_limit),
        stack_mb=_int_env("SDREAL_STACK_MB", Settings.stack_mb),
        oracle_samples=_int_env("SDREAL_ORACLE_SAMPLES", Settings.oracle_samples),
        oracle_depth=_int_env("SDREAL_ORACLE_DEPTH", Settings.oracle_depth),
    )
