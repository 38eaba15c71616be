from __future__ import annotations

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, TextIO

import numpy as np

LOGGER_NAMESPACE = "qudit"
_HANDLER_TAG = "_qudit_json_logger"
# arrays above this size are logged as a shape/norm summary
_ARRAY_INLINE_LIMIT = 16
_RECORD_ATTRS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}


def _to_json_safe(value: Any) -> Any:
    if value is None or isinstance(value, (str, bool, int, float)):
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.generic):
        return _to_json_safe(value.item())
    if isinstance(value, np.ndarray):
        if value.size > _ARRAY_INLINE_LIMIT:
            return {"shape": list(value.shape), "dtype": str(value.dtype), "norm": float(np.linalg.norm(value))}
        return _to_json_safe(value.tolist())
    if isinstance(value, dict):
        return {str(k): _to_json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_to_json_safe(item) for item in value]
    if hasattr(value, "model_dump"):
        return _to_json_safe(value.model_dump(mode="json"))
    return str(value)


class JsonLogFormatter(logging.Formatter):
    """One JSON object per record with ``extra`` fields flattened beside the message."""

    def format(self, record: logging.LogRecord) -> str:  # noqa: D401
        payload: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            "level": record.levelname.lower(),
            "logger": record.name,
            "message": record.getMessage(),
        }
        payload.update(
            {
                key: _to_json_safe(value)
                for key, value in vars(record).items()
                if key not in _RECORD_ATTRS and not key.startswith("_")
            }
        )
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False)


def _resolve_level(level: int | str) -> int:
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(str(level).strip().upper())
    return resolved if isinstance(resolved, int) else logging.WARNING


def configure_json_logging(*, level: int | str = logging.INFO, stream: TextIO | None = None) -> None:
    """Install the JSON handler on the root logger once; later calls only adjust the level.

    Records go to standard error so standard output stays free for documents.
    """
    root = logging.getLogger()
    root.setLevel(_resolve_level(level))
    if any(getattr(handler, _HANDLER_TAG, False) for handler in root.handlers):
        return
    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(JsonLogFormatter())
    setattr(handler, _HANDLER_TAG, True)
    root.addHandler(handler)


def get_logger(name: str) -> logging.Logger:
    if name == LOGGER_NAMESPACE or name.startswith(f"{LOGGER_NAMESPACE}."):
        return logging.getLogger(name)
    return logging.getLogger(f"{LOGGER_NAMESPACE}.{name}")


def log_event(logger: logging.Logger, level: int, message: str, **fields: Any) -> None:
    extra = {}
    for key, value in fields.items():
        # LogRecord refuses extras that shadow its own attributes
        safe_key = f"{key}_" if key in _RECORD_ATTRS else key
        extra[safe_key] = _to_json_safe(value)
    logger.log(level, message, extra=extra)
