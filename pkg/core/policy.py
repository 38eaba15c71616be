from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any

from core.models import NumericPolicy

_DEFAULT_POLICY = NumericPolicy()
_POLICY: ContextVar[NumericPolicy] = ContextVar("qudit_numeric_policy", default=_DEFAULT_POLICY)


def current_policy() -> NumericPolicy:
    return _POLICY.get()


@contextmanager
def use_policy(policy: NumericPolicy | None = None, **overrides: Any) -> Iterator[NumericPolicy]:
    """Scope a numeric policy to the current context.

    ``overrides`` are applied on top of ``policy`` (or the active policy).
    """
    base = policy or _POLICY.get()
    effective = NumericPolicy.model_validate({**base.model_dump(), **overrides}) if overrides else base
    token = _POLICY.set(effective)
    try:
        yield effective
    finally:
        _POLICY.reset(token)
