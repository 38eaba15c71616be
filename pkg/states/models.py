from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from errors import QuditError


class GellMannVariant(str, enum.Enum):
    STANDARD = "standard"
    ALTERNATIVE = "alternative"


class GraphSpec(BaseModel):
    """Undirected simple graph; row i of the adjacency matrix is qudit i + 1."""

    model_config = ConfigDict(frozen=True)

    adjacency: tuple[tuple[int, ...], ...]

    @field_validator("adjacency")
    @classmethod
    def _check_adjacency(cls, value: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
        n = len(value)
        if n == 0:
            raise ValueError("adjacency matrix is empty")
        for i, row in enumerate(value):
            if len(row) != n:
                raise ValueError(f"row {i + 1} has {len(row)} entries, expected {n}")
            if row[i] != 0:
                raise ValueError(f"diagonal entry {i + 1} is nonzero")
            for j, entry in enumerate(row):
                if entry not in (0, 1):
                    raise ValueError(f"entry ({i + 1},{j + 1}) is {entry}, expected 0 or 1")
                if value[j][i] != entry:
                    raise ValueError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ")
        return value

    @classmethod
    def coerce(cls, value: "GraphSpec | Sequence[Sequence[float]] | np.ndarray") -> "GraphSpec":
        if isinstance(value, GraphSpec):
            return value
        try:
            arr = np.asarray(value)
            if arr.ndim != 2 or not np.all(np.isin(arr, (0, 1))):
                raise ValueError("adjacency entries must be 0 or 1")
            return cls(adjacency=tuple(tuple(int(x) for x in row) for row in arr))
        except (TypeError, ValueError) as exc:
            raise QuditError("INVALID_GRAPH", f"malformed adjacency matrix: {exc}") from exc

    @classmethod
    def line(cls, n: int) -> "GraphSpec":
        rows = [[1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]
        return cls.coerce(rows)

    @classmethod
    def ring(cls, n: int) -> "GraphSpec":
        rows = [[1 if (i - j) % n in (1, n - 1) and i != j else 0 for j in range(n)] for i in range(n)]
        return cls.coerce(rows)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i in range(self.n) for j in range(i + 1, self.n) if self.adjacency[i][j]]

    def neighbors(self, k: int) -> list[int]:
        return [j + 1 for j, entry in enumerate(self.adjacency[k - 1]) if entry]


@dataclass(frozen=True)
class StabilizerSet:
    generators: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class StandardGates:
    cnot: np.ndarray
    hadamard: np.ndarray


@dataclass(frozen=True)
class PauliBasis:
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    e: np.ndarray


@dataclass(frozen=True)
class SU3Basis:
    generators: tuple[np.ndarray, ...]
    identity: np.ndarray
