from __future__ import annotations

import enum

from pydantic import BaseModel, ConfigDict, Field

from errors import ParameterError


class Boundary(str, enum.Enum):
    PERIODIC = "periodic"
    APERIODIC = "aperiodic"


class IsingMethod(str, enum.Enum):
    EXACT = "exact"
    FERMION = "fermion"


class ChainSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_sites: int = Field(ge=2)
    boundary: Boundary = Boundary.APERIODIC

    def bonds(self) -> list[tuple[int, int]]:
        pairs = [(k, k + 1) for k in range(1, self.n_sites)]
        if self.boundary == Boundary.PERIODIC:
            pairs.append((self.n_sites, 1))
        return pairs


class XYParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    jx: float = Field(allow_inf_nan=False)
    jy: float = Field(allow_inf_nan=False)
    b: float = Field(default=0.0, allow_inf_nan=False)


class ThermalParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    temperature: float = Field(gt=0, allow_inf_nan=False)

    @classmethod
    def coerce(cls, value: "ThermalParams | float") -> "ThermalParams":
        if isinstance(value, ThermalParams):
            return value
        try:
            return cls(temperature=value)
        except ValueError as exc:
            raise ParameterError(f"temperature must be positive and finite, got {value!r}") from exc
