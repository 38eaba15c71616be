from __future__ import annotations

from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from core.models import StateKind
from core.service import as_vector, is_vector_like, register_size, side, to_dense
from errors import DocumentError


class QuantumDocument(BaseModel):
    """Text exchange format for kets, density matrices and operators.

    ``data`` holds row-major ``[re, im]`` pairs.
    """

    kind: StateKind
    d: int = Field(default=2, ge=2)
    n: int = Field(ge=1)
    data: list[tuple[float, float]]

    @model_validator(mode="after")
    def _check_length(self) -> "QuantumDocument":
        width = self.d**self.n
        expected = width if self.kind == StateKind.KET else width * width
        if len(self.data) != expected:
            raise ValueError(f"expected {expected} entries for kind={self.kind.value}, d={self.d}, n={self.n}; got {len(self.data)}")
        return self

    @classmethod
    def from_array(cls, value: Any, *, d: int = 2, kind: Optional[StateKind] = None) -> "QuantumDocument":
        if is_vector_like(value):
            arr = as_vector(value)
            resolved = kind or StateKind.KET
            n = register_size(arr.size, d)
        else:
            arr = to_dense(value)
            resolved = kind or StateKind.OP
            n = register_size(side(arr), d)
        flat = arr.reshape(-1)
        return cls(kind=resolved, d=d, n=n, data=[(float(z.real), float(z.imag)) for z in flat])

    def to_array(self) -> np.ndarray:
        pairs = np.asarray(self.data, dtype=float).reshape(-1, 2)
        flat = pairs[:, 0] + 1j * pairs[:, 1]
        if self.kind == StateKind.KET:
            return flat
        width = self.d**self.n
        return flat.reshape(width, width)


def dumps_document(value: Any, *, d: int = 2, kind: Optional[StateKind] = None) -> str:
    return QuantumDocument.from_array(value, d=d, kind=kind).model_dump_json()


def loads_document(text: str) -> QuantumDocument:
    if not str(text or "").strip():
        raise DocumentError("empty document")
    try:
        return QuantumDocument.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0] if exc.errors() else {}
        raise DocumentError(f"invalid document: {first.get('msg') or exc}") from exc


def read_document(path: str | Path) -> QuantumDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return loads_document(text)


def write_document(path: str | Path, value: Any, *, d: int = 2, kind: Optional[StateKind] = None) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps_document(value, d=d, kind=kind) + "\n", encoding="utf-8")
    return target
