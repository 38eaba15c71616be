from __future__ import annotations

import math
from functools import reduce
from typing import Any, Union

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import eigsh

from core.models import RegisterShape, Storage
from core.policy import current_policy
from errors import (
    DimensionError,
    HermiticityError,
    NormalizationError,
    ParameterError,
    QuditError,
    SizeCapError,
)

Operator = Union[np.ndarray, sparse.spmatrix]


# ---------------------------------------------------------------------------
# Coercion helpers shared by every module
# ---------------------------------------------------------------------------


def is_vector_like(value: Any) -> bool:
    if sparse.issparse(value):
        return False
    shape = np.shape(value)
    if len(shape) == 1:
        return True
    return len(shape) == 2 and shape != (1, 1) and 1 in shape


def as_vector(value: Any) -> np.ndarray:
    if sparse.issparse(value):
        value = value.toarray()
    arr = np.array(value, dtype=complex)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if arr.ndim != 1:
        raise DimensionError("DIMENSION_MISMATCH", f"expected a state vector, got shape {arr.shape}")
    if arr.size == 0:
        raise ParameterError("state vector must be nonempty")
    return arr


def as_operator(value: Any) -> Operator:
    if sparse.issparse(value):
        return sparse.csr_matrix(value, dtype=complex)
    arr = np.array(value, dtype=complex)
    if arr.ndim != 2:
        raise DimensionError("NOT_SQUARE", f"expected a matrix, got {arr.ndim} dimension(s)")
    return arr


def side(m: Operator) -> int:
    shape = m.shape
    if len(shape) != 2 or shape[0] != shape[1]:
        raise QuditError("NOT_SQUARE", f"matrix of shape {tuple(shape)} is not square")
    return int(shape[0])


def register_size(length: int, d: int = 2) -> int:
    """Number of qudits N with d**N == length."""
    if d < 2:
        raise ParameterError(f"local dimension must be at least 2, got {d}")
    n, size = 0, 1
    while size < length:
        size *= d
        n += 1
    if size != length or length < 1:
        raise QuditError("NOT_POWER_OF_D", f"dimension {length} is not a power of {d}")
    return n


def ensure_within_cap(dim: int, storage: Storage = Storage.DENSE) -> None:
    cap = current_policy().cap_for(Storage(storage))
    if dim > cap:
        raise SizeCapError(f"side {dim} exceeds the {Storage(storage).value} cap {cap}")


def as_storage(m: Operator, storage: Storage) -> Operator:
    if Storage(storage) == Storage.SPARSE:
        return to_sparse(m)
    return to_dense(m)


def is_hermitian(m: Operator, tol: float | None = None) -> bool:
    tol = current_policy().hermitian_tol if tol is None else tol
    diff = m - m.conj().T
    if sparse.issparse(diff):
        return diff.nnz == 0 or float(abs(diff).max()) <= tol
    return bool(np.max(np.abs(diff), initial=0.0) <= tol)


def require_hermitian(m: Operator) -> Operator:
    m = as_operator(m)
    side(m)
    if not is_hermitian(m):
        raise HermiticityError("operator is not Hermitian within tolerance")
    return m


def density(s: Any) -> np.ndarray:
    """Coerce a state vector or density matrix to a normalized dense density matrix."""
    if is_vector_like(s):
        return ketbra(s)
    rho = to_dense(as_operator(s))
    side(rho)
    return nm(rho)


# ---------------------------------------------------------------------------
# Dirac notation
# ---------------------------------------------------------------------------


def nm(s: Any) -> Any:
    if is_vector_like(s):
        v = as_vector(s)
        norm = float(np.linalg.norm(v))
        if norm <= current_policy().norm_tol:
            raise NormalizationError("cannot normalize a zero vector")
        return v / norm
    m = as_operator(s)
    side(m)
    trace = complex(m.diagonal().sum())
    if abs(trace) <= current_policy().norm_tol:
        raise NormalizationError("cannot normalize a matrix with zero trace")
    return m / trace


def ket(raw: Any, d: int = 2) -> np.ndarray:
    v = as_vector(raw)
    register_size(v.size, d)
    return nm(v)


def bra(raw: Any, d: int = 2) -> np.ndarray:
    return ket(raw, d).conj()


def ketbra(s: Any) -> np.ndarray:
    if is_vector_like(s):
        v = nm(s)
        return np.outer(v, v.conj())
    return nm(to_dense(as_operator(s)))


ketbra2 = ketbra


def braket(v1: Any, *rest: Any) -> complex:
    """``braket(v1, v2)`` or ``braket(v1, op, v2)``; inputs are not normalized."""
    if len(rest) not in (1, 2):
        raise ParameterError("braket takes two vectors and an optional operator between them")
    left = as_vector(v1)
    right = as_vector(rest[-1])
    if len(rest) == 2:
        op = as_operator(rest[0])
        if side(op) != right.size:
            raise DimensionError("DIMENSION_MISMATCH", f"operator side {op.shape[0]} vs vector {right.size}")
        right = np.asarray(op @ right).reshape(-1)
    if left.size != right.size:
        raise DimensionError("DIMENSION_MISMATCH", f"vector lengths {left.size} and {right.size} differ")
    return complex(np.vdot(left, right))


def ex(op: Any, s: Any) -> complex:
    op = as_operator(op)
    dim = side(op)
    if is_vector_like(s):
        v = nm(s)
        if v.size != dim:
            raise DimensionError("DIMENSION_MISMATCH", f"operator side {dim} vs state length {v.size}")
        return complex(np.vdot(v, np.asarray(op @ v).reshape(-1)))
    rho = density(s)
    if rho.shape[0] != dim:
        raise DimensionError("DIMENSION_MISMATCH", f"operator side {dim} vs state side {rho.shape[0]}")
    if sparse.issparse(op):
        return complex(np.trace(np.asarray(op @ rho)))
    return complex(np.einsum("ij,ji->", op, rho))


def va(op: Any, s: Any) -> float:
    op = require_hermitian(op)
    mean = ex(op, s)
    return float((ex(op @ op, s) - mean * mean).real)


# ---------------------------------------------------------------------------
# Kronecker utilities
# ---------------------------------------------------------------------------


def _kron(a: Any, b: Any) -> Any:
    if sparse.issparse(a) or sparse.issparse(b):
        return sparse.kron(a, b, format="csr")
    return np.kron(a, b)


def mkron(*factors: Any) -> Any:
    """Left-associated Kronecker product; the first factor is the highest qudit."""
    if not factors:
        raise ParameterError("mkron needs at least one factor")
    prepared = [f if sparse.issparse(f) else np.asarray(f, dtype=complex) for f in factors]
    return reduce(_kron, prepared)


def pkron(m: Any, n: int) -> Any:
    if int(n) < 1:
        raise ParameterError(f"Kronecker power must be at least 1, got {n}")
    return mkron(*([m] * int(n)))


def qvec(shape: RegisterShape) -> np.ndarray:
    return np.zeros(shape.total_dim, dtype=complex)


def qeye(shape: RegisterShape, storage: Storage = Storage.DENSE) -> Operator:
    ensure_within_cap(shape.total_dim, storage)
    if Storage(storage) == Storage.SPARSE:
        return sparse.identity(shape.total_dim, dtype=complex, format="csr")
    return np.eye(shape.total_dim, dtype=complex)


def qsize(s: Any, d: int = 2) -> int:
    if is_vector_like(s):
        return register_size(as_vector(s).size, d)
    return register_size(side(as_operator(s)), d)


# ---------------------------------------------------------------------------
# Small matrix utilities
# ---------------------------------------------------------------------------


def _extremal_eig(m: Any, largest: bool) -> float:
    m = as_operator(m)
    dim = side(m)
    if sparse.issparse(m) and dim > current_policy().ed_dense_max_dim and is_hermitian(m):
        value = eigsh(m, k=1, which="LA" if largest else "SA", return_eigenvectors=False)
        return float(value[0].real)
    dense = to_dense(m)
    if is_hermitian(dense):
        values = np.linalg.eigvalsh(dense)
    else:
        values = np.linalg.eigvals(dense).real
    return float(values.max() if largest else values.min())


def maxeig(m: Any) -> float:
    return _extremal_eig(m, largest=True)


def mineig(m: Any) -> float:
    return _extremal_eig(m, largest=False)


def trace2(m: Any) -> complex:
    m = as_operator(m)
    side(m)
    if sparse.issparse(m):
        return complex(m.multiply(m.T).sum())
    return complex(np.sum(m * m.T))


def trnorm(m: Any) -> float:
    dense = to_dense(as_operator(m))
    return float(np.linalg.svd(dense, compute_uv=False).sum())


def comm(a: Any, b: Any) -> Operator:
    a, b = as_operator(a), as_operator(b)
    if side(a) != side(b):
        raise DimensionError("DIMENSION_MISMATCH", f"sides {a.shape[0]} and {b.shape[0]} differ")
    return a @ b - b @ a


def addnoise(s: Any, p: float) -> np.ndarray:
    """White noise: p*rho + (1-p)*I/dim."""
    if not 0.0 <= float(p) <= 1.0:
        raise ParameterError(f"noise weight p must lie in [0, 1], got {p}")
    rho = density(s)
    dim = rho.shape[0]
    return float(p) * rho + (1.0 - float(p)) * np.eye(dim, dtype=complex) / dim


def binom(m: int, n: int) -> int:
    if not 0 <= int(m) <= int(n):
        raise ParameterError(f"binom needs 0 <= m <= n, got m={m}, n={n}")
    return math.comb(int(n), int(m))


def _swap(d: int) -> np.ndarray:
    idx = np.arange(d * d)
    high, low = np.divmod(idx, d)
    out = np.zeros((d * d, d * d), dtype=complex)
    out[low * d + high, idx] = 1.0
    return out


def _two_qudit_projector(shape: RegisterShape, sign: float) -> np.ndarray:
    if shape.n_qudits != 2:
        raise QuditError("UNSUPPORTED_REGISTER", "symmetric/antisymmetric projectors are defined for two qudits only")
    d = shape.dim
    return (np.eye(d * d, dtype=complex) + sign * _swap(d)) / 2.0


def proj_sym(shape: RegisterShape) -> np.ndarray:
    return _two_qudit_projector(shape, 1.0)


def proj_asym(shape: RegisterShape) -> np.ndarray:
    return _two_qudit_projector(shape, -1.0)


def to_sparse(m: Any) -> sparse.csr_matrix:
    if sparse.issparse(m):
        return sparse.csr_matrix(m, dtype=complex, copy=True)
    return sparse.csr_matrix(np.asarray(m, dtype=complex))


def to_dense(m: Any) -> np.ndarray:
    if sparse.issparse(m):
        ensure_within_cap(max(m.shape), Storage.DENSE)
        return m.toarray().astype(complex, copy=False)
    return np.array(m, dtype=complex)
