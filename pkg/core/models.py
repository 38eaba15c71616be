from __future__ import annotations

import enum

from pydantic import BaseModel, ConfigDict, Field

from config import DENSE_MAX_DIM, ED_DENSE_MAX_DIM, HERMITIAN_TOL, NORM_TOL, SPARSE_MAX_DIM


class Storage(str, enum.Enum):
    DENSE = "dense"
    SPARSE = "sparse"


class StateKind(str, enum.Enum):
    KET = "ket"
    DM = "dm"
    OP = "op"


class RegisterShape(BaseModel):
    """N qudits of local dimension d; qudit 1 is the least significant factor."""

    model_config = ConfigDict(frozen=True)

    n_qudits: int = Field(ge=1)
    dim: int = Field(default=2, ge=2)

    @property
    def total_dim(self) -> int:
        return int(self.dim**self.n_qudits)


class NumericPolicy(BaseModel):
    model_config = ConfigDict(frozen=True)

    hermitian_tol: float = Field(default=HERMITIAN_TOL, gt=0)
    norm_tol: float = Field(default=NORM_TOL, gt=0)
    dense_max_dim: int = Field(default=DENSE_MAX_DIM, ge=1)
    sparse_max_dim: int = Field(default=SPARSE_MAX_DIM, ge=1)
    ed_dense_max_dim: int = Field(default=ED_DENSE_MAX_DIM, ge=1)

    def cap_for(self, storage: Storage) -> int:
        return self.sparse_max_dim if storage == Storage.SPARSE else self.dense_max_dim
