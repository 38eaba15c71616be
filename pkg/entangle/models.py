from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import SEARCH_CHUNK, SEARCH_PHASE1, SEARCH_PHASE2, SEARCH_POLISH_SWEEPS, SEARCH_STEP
from errors import ParameterError, PermutationError


class SearchParams(BaseModel):
    """Trial budget of the stochastic separable-state searches."""

    model_config = ConfigDict(frozen=True)

    n_phase1: int = Field(default=SEARCH_PHASE1, ge=1)
    n_phase2: int = Field(default=SEARCH_PHASE2, ge=0)
    step_const: float = Field(default=SEARCH_STEP, gt=0, allow_inf_nan=False)
    polish_sweeps: int = Field(default=SEARCH_POLISH_SWEEPS, ge=0)
    chunk_size: int = Field(default=SEARCH_CHUNK, ge=1)

    @classmethod
    def parse(cls, text: str) -> "SearchParams":
        """``"a,b,c"`` as n_phase1, n_phase2, step_const."""
        parts = [p.strip() for p in str(text or "").split(",") if p.strip()]
        if len(parts) != 3:
            raise ParameterError(f"search parameters need three comma separated values, got {text!r}")
        try:
            return cls(n_phase1=int(parts[0]), n_phase2=int(parts[1]), step_const=float(parts[2]))
        except ValueError as exc:
            raise ParameterError(f"invalid search parameters {text!r}: {exc}") from exc


class SpinSqueezingReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    fmin: float
    f123: tuple[float, float, float]

    @model_validator(mode="after")
    def _check_min(self) -> "SpinSqueezingReport":
        if self.fmin != min(self.f123):
            raise ValueError("fmin must equal the smallest inequality margin")
        return self

    @property
    def detected(self) -> bool:
        return self.fmin < 0


class BipartitionMask(BaseModel):
    """One side of a bipartition of qudits 1..N."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[int, ...]

    @classmethod
    def coerce(cls, value: "BipartitionMask | Iterable[int]", n: int) -> "BipartitionMask":
        entries = value.entries if isinstance(value, BipartitionMask) else tuple(sorted(int(q) for q in value))
        if len(set(entries)) != len(entries) or any(not 1 <= q <= n for q in entries):
            raise PermutationError("INVALID_QUDIT_LIST", f"invalid bipartition side {list(entries)} for N={n}")
        if not 0 < len(entries) < n:
            raise PermutationError("INVALID_QUDIT_LIST", f"bipartition side must be a nonempty proper subset of 1..{n}")
        return cls(entries=entries)

    def complement(self, n: int) -> "BipartitionMask":
        return BipartitionMask(entries=tuple(q for q in range(1, n + 1) if q not in self.entries))


@dataclass(frozen=True)
class SearchResult:
    """Best value found and the product factors attaining it, most significant block first."""

    value: float
    factors: tuple[np.ndarray, ...] = field(default_factory=tuple)

    def __float__(self) -> float:
        return float(self.value)
