from __future__ import annotations

import enum
from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, field_validator

from errors import PermutationError


class ShiftDirection(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Permutation(BaseModel):
    """Qudit permutation written in slot order, qudit N first.

    Slot j of the result receives original qudit ``entries[j]``; the
    identity is ``(N, N-1, ..., 1)``.
    """

    model_config = ConfigDict(frozen=True)

    entries: tuple[int, ...]

    @field_validator("entries")
    @classmethod
    def _check_bijection(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not value or sorted(value) != list(range(1, len(value) + 1)):
            raise ValueError(f"{list(value)} is not a permutation of 1..{len(value)}")
        return value

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(entries=tuple(range(n, 0, -1)))

    @classmethod
    def coerce(cls, value: "Permutation | Iterable[int]") -> "Permutation":
        if isinstance(value, Permutation):
            return value
        try:
            return cls(entries=tuple(int(p) for p in value))
        except (TypeError, ValueError) as exc:
            raise PermutationError("INVALID_PERMUTATION", f"invalid permutation {value!r}") from exc


class QuditList(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: tuple[int, ...]

    @classmethod
    def coerce(cls, value: "QuditList | Iterable[int]", n: int) -> "QuditList":
        entries = value.entries if isinstance(value, QuditList) else tuple(int(q) for q in value)
        if len(set(entries)) != len(entries):
            raise PermutationError("INVALID_QUDIT_LIST", f"duplicate qudit indices in {list(entries)}")
        bad = [q for q in entries if not 1 <= q <= n]
        if bad:
            raise PermutationError("INVALID_QUDIT_LIST", f"qudit indices {bad} outside 1..{n}")
        return cls(entries=entries)

    def complement(self, n: int) -> "QuditList":
        return QuditList(entries=tuple(q for q in range(1, n + 1) if q not in self.entries))
