import os
from typing import Any, Callable, Dict, TypeVar

import yaml

ROOT_DIR = os.path.dirname(__file__)

T = TypeVar("T")


def _parse_dotenv_line(raw_line: str) -> tuple[str, str] | None:
    line = raw_line.strip()
    if not line or line.startswith("#"):
        return None
    if line.startswith("export "):
        line = line[len("export ") :].strip()
    key, sep, value = line.partition("=")
    key, value = key.strip(), value.strip()
    if not sep or not key:
        return None
    if len(value) >= 2 and value[0] == value[-1] and value[0] in {"'", '"'}:
        value = value[1:-1]
    return key, value


def _load_dotenv(path: str, existing_env: set[str], allow_override: bool = False) -> None:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError:
        return
    for raw_line in lines:
        parsed = _parse_dotenv_line(raw_line)
        if parsed is None:
            continue
        key, value = parsed
        current = str(os.environ.get(key, "") or "").strip()
        # a non-empty value from the real environment always wins
        if current and (key in existing_env or not allow_override):
            continue
        os.environ[key] = value


_EXISTING_ENV = set(os.environ.keys())
_load_dotenv(os.path.join(ROOT_DIR, ".env"), _EXISTING_ENV, allow_override=False)
_load_dotenv(os.path.join(ROOT_DIR, ".env.local"), _EXISTING_ENV, allow_override=True)

APP_ENV = os.getenv("APP_ENV", "dev")
CONFIG_PATH = os.getenv("QUDIT_CONFIG_PATH", os.path.join(ROOT_DIR, "config.yaml"))


def _load_config(path: str, env: str) -> Dict[str, Any]:
    """YAML settings; a top-level section named after ``env`` takes precedence over the flat file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data: Any = yaml.safe_load(handle) or {}
    except (OSError, yaml.YAMLError):
        return {}
    if not isinstance(data, dict):
        return {}
    section = data.get(env)
    return dict(section) if isinstance(section, dict) else dict(data)


_CONFIG = _load_config(CONFIG_PATH, APP_ENV)


def _get(name: str, default: Any) -> Any:
    if name in os.environ:
        return os.environ[name]
    for key in (name, name.lower()):
        if key in _CONFIG:
            return _CONFIG[key]
    return default


def _parse_bool(value: Any, default: bool) -> bool:
    if value is None:
        return default
    return str(value).strip().lower() in {"1", "true", "yes"}


def _typed(name: str, default: T, cast: Callable[[Any], T], *, minimum: float | None = None) -> T:
    raw = _get(name, default)
    try:
        value = cast(raw)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name}={raw!r} is not a valid {cast.__name__}") from exc
    if minimum is not None and value < minimum:  # type: ignore[operator]
        raise ValueError(f"{name}={value!r} must be at least {minimum}")
    return value


# Numeric policy
HERMITIAN_TOL = _typed("QUDIT_HERMITIAN_TOL", 1e-9, float, minimum=0.0)
NORM_TOL = _typed("QUDIT_NORM_TOL", 1e-12, float, minimum=0.0)
DENSE_MAX_DIM = _typed("QUDIT_DENSE_MAX_DIM", 4096, int, minimum=1)
SPARSE_MAX_DIM = _typed("QUDIT_SPARSE_MAX_DIM", 2**24, int, minimum=1)
ED_DENSE_MAX_DIM = _typed("QUDIT_ED_DENSE_MAX_DIM", 1024, int, minimum=1)

# Formatting
PRINTV_THRESHOLD = _typed("QUDIT_PRINTV_THRESHOLD", 1e-4, float, minimum=0.0)
DECOMPOSE_THRESHOLD = _typed("QUDIT_DECOMPOSE_THRESHOLD", 1e-14, float, minimum=0.0)
SCALAR_DIGITS = _typed("QUDIT_SCALAR_DIGITS", 6, int, minimum=1)

# Stochastic searches
SEARCH_PHASE1 = _typed("QUDIT_SEARCH_PHASE1", 10000, int, minimum=1)
SEARCH_PHASE2 = _typed("QUDIT_SEARCH_PHASE2", 20000, int, minimum=1)
SEARCH_STEP = _typed("QUDIT_SEARCH_STEP", 0.005, float, minimum=0.0)
SEARCH_POLISH_SWEEPS = _typed("QUDIT_SEARCH_POLISH_SWEEPS", 50, int, minimum=0)
SEARCH_CHUNK = _typed("QUDIT_SEARCH_CHUNK", 1024, int, minimum=1)
TWIRL_ITERATIONS = _typed("QUDIT_TWIRL_ITERATIONS", 100, int, minimum=0)

LOG_LEVEL = str(_get("QUDIT_LOG_LEVEL", "WARNING")).strip().upper() or "WARNING"
METRICS_ENABLED = _parse_bool(_get("QUDIT_METRICS_ENABLED", None), True)
