from __future__ import annotations

from functools import reduce
from typing import Any

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import eigsh

from chains.models import Boundary, ChainSpec, ThermalParams, XYParams
from core.models import Storage
from core.paulis import SIGMA_X, SIGMA_Y, SIGMA_Z
from core.policy import current_policy
from core.service import (
    Operator,
    as_operator,
    as_storage,
    ensure_within_cap,
    require_hermitian,
    side,
    to_dense,
)
from errors import DimensionError, ParameterError, PermutationError
from permute.service import reorder

# ---------------------------------------------------------------------------
# Placement of site operators
# ---------------------------------------------------------------------------


def _identity(dim: int, storage: Storage) -> Operator:
    if storage == Storage.SPARSE:
        return sparse.identity(dim, dtype=complex, format="csr")
    return np.eye(dim, dtype=complex)


def _kron(a: Operator, b: Operator) -> Operator:
    if sparse.issparse(a):
        return sparse.kron(a, b, format="csr")
    return np.kron(a, b)


def _check_sites(n: int, *sites: int) -> None:
    if n < 1:
        raise ParameterError(f"register needs at least one qudit, got N={n}")
    bad = [k for k in sites if not 1 <= int(k) <= n]
    if bad:
        raise PermutationError("INVALID_QUDIT_LIST", f"sites {bad} outside 1..{n}")
    if len(set(sites)) != len(sites):
        raise PermutationError("INVALID_QUDIT_LIST", f"sites {list(sites)} overlap")


def _resolve_storage(storage: Storage | None, *ops: Any) -> Storage:
    """Explicit storage wins; otherwise sparse when any input operator is sparse."""
    if storage is not None:
        return Storage(storage)
    return Storage.SPARSE if any(sparse.issparse(op) for op in ops) else Storage.DENSE


def _place(placed: dict[int, Any], n: int, storage: Storage | None = None) -> Operator:
    """Kronecker product with ``placed[k]`` on qudit k and identities elsewhere."""
    storage = _resolve_storage(storage, *placed.values())
    ops = {k: as_operator(op) for k, op in placed.items()}
    dims = {side(op) for op in ops.values()}
    if len(dims) != 1:
        raise DimensionError("DIMENSION_MISMATCH", f"site operators have different sides {sorted(dims)}")
    d = dims.pop()
    ensure_within_cap(d**n, storage)
    factors: list[Operator] = []
    run = 0
    for q in range(n, 0, -1):
        if q in ops:
            if run:
                factors.append(_identity(d**run, storage))
                run = 0
            factors.append(as_storage(ops[q], storage))
        else:
            run += 1
    if run:
        factors.append(_identity(d**run, storage))
    return reduce(_kron, factors)


def _zero(dim: int, storage: Storage) -> Operator:
    if Storage(storage) == Storage.SPARSE:
        return sparse.csr_matrix((dim, dim), dtype=complex)
    return np.zeros((dim, dim), dtype=complex)


def quditop(op: Any, k: int, n: int, storage: Storage | None = None) -> Operator:
    _check_sites(n, k)
    return _place({int(k): op}, n, storage)


def interact(op1: Any, op2: Any, n1: int, n2: int, n: int, storage: Storage | None = None) -> Operator:
    _check_sites(n, n1, n2)
    return _place({int(n1): op1, int(n2): op2}, n, storage)


def twoquditop(op: Any, k1: int, k2: int, n: int, storage: Storage | None = None) -> Operator:
    """Embed a two-qudit operator; its qudit 1 acts on ``k1`` and its qudit 2 on ``k2``."""
    _check_sites(n, k1, k2)
    storage = _resolve_storage(storage, op)
    op = as_operator(op)
    d = int(round(np.sqrt(side(op))))
    if d * d != side(op) or d < 2:
        raise DimensionError("NOT_POWER_OF_D", f"two-qudit operator side {side(op)} is not a square number")
    ensure_within_cap(d**n, storage)
    op = as_storage(op, storage)
    full = _kron(_identity(d ** (n - 2), storage), op) if n > 2 else op
    # slot j (qudit n - j) receives original qudit entries[j]
    entries = [0] * n
    entries[n - k1] = 1
    entries[n - k2] = 2
    spare = iter(range(n, 2, -1))
    entries = [e or next(spare) for e in entries]
    return reorder(full, entries, d)


def coll(op: Any, n: int, storage: Storage | None = None) -> Operator:
    storage = _resolve_storage(storage, op)
    d = side(as_operator(op))
    total = _zero(d**n, storage)
    for k in range(1, n + 1):
        total = total + quditop(op, k, n, storage)
    return total


def nnchain(
    op1: Any,
    op2: Any,
    n: int,
    boundary: Boundary = Boundary.APERIODIC,
    storage: Storage | None = None,
) -> Operator:
    storage = _resolve_storage(storage, op1, op2)
    if n < 2:
        raise ParameterError(f"chain needs at least two sites, got N={n}")
    spec = ChainSpec(n_sites=n, boundary=boundary)
    d = side(as_operator(op1))
    total = _zero(d**n, storage)
    for k1, k2 in spec.bonds():
        total = total + interact(op1, op2, k1, k2, n, storage)
    return total


def ising(b: float, n: int, boundary: Boundary = Boundary.APERIODIC, storage: Storage = Storage.DENSE) -> Operator:
    return -nnchain(SIGMA_Z, SIGMA_Z, n, boundary, storage) + float(b) * coll(SIGMA_X, n, storage)


def heisenberg(n: int, boundary: Boundary = Boundary.APERIODIC, storage: Storage = Storage.DENSE) -> Operator:
    return (
        nnchain(SIGMA_X, SIGMA_X, n, boundary, storage)
        + nnchain(SIGMA_Y, SIGMA_Y, n, boundary, storage)
        + nnchain(SIGMA_Z, SIGMA_Z, n, boundary, storage)
    )


def xy_hamiltonian(
    params: XYParams,
    n: int,
    boundary: Boundary = Boundary.APERIODIC,
    storage: Storage = Storage.DENSE,
) -> Operator:
    # the field couples to sigma_x, same axis as the jx term
    return (
        params.jx * nnchain(SIGMA_X, SIGMA_X, n, boundary, storage)
        + params.jy * nnchain(SIGMA_Y, SIGMA_Y, n, boundary, storage)
        + params.b * coll(SIGMA_X, n, storage)
    )


def cluster_hamiltonian(n: int, boundary: Boundary = Boundary.APERIODIC, storage: Storage = Storage.DENSE) -> Operator:
    """Minus the sum of line (aperiodic) or ring (periodic) graph stabilizers."""
    boundary = Boundary(boundary)
    if n < 3:
        raise ParameterError(f"cluster Hamiltonian needs N >= 3, got {n}")
    total = _zero(2**n, storage)
    for k in range(1, n + 1):
        placed: dict[int, Any] = {k: SIGMA_X}
        for neighbor in (k - 1, k + 1):
            if 1 <= neighbor <= n:
                placed[neighbor] = SIGMA_Z
            elif boundary == Boundary.PERIODIC:
                placed[(neighbor - 1) % n + 1] = SIGMA_Z
        total = total - _place(placed, n, storage)
    return total


# ---------------------------------------------------------------------------
# Two-dimensional lattices
# ---------------------------------------------------------------------------


def lattice_bonds(nx: int, ny: int, boundary: Boundary = Boundary.APERIODIC) -> list[tuple[int, int]]:
    """Nearest-neighbor bonds; site (ix, iy) has index ix + nx*(iy-1).

    Wrap bonds along a direction of length 2 duplicate the inner bond, a
    direction of length 1 has no bonds.
    """
    if nx < 1 or ny < 1 or nx * ny < 2:
        raise ParameterError(f"lattice needs at least two sites, got {nx}x{ny}")
    periodic = Boundary(boundary) == Boundary.PERIODIC

    def site(ix: int, iy: int) -> int:
        return ix + nx * (iy - 1)

    bonds: list[tuple[int, int]] = []
    for iy in range(1, ny + 1):
        for ix in range(1, nx):
            bonds.append((site(ix, iy), site(ix + 1, iy)))
        if periodic and nx >= 2:
            bonds.append((site(nx, iy), site(1, iy)))
    for ix in range(1, nx + 1):
        for iy in range(1, ny):
            bonds.append((site(ix, iy), site(ix, iy + 1)))
        if periodic and ny >= 2:
            bonds.append((site(ix, ny), site(ix, 1)))
    return bonds


def lattice2d(
    op1: Any,
    op2: Any,
    nx: int,
    ny: int,
    boundary: Boundary = Boundary.APERIODIC,
    storage: Storage = Storage.SPARSE,
) -> Operator:
    bonds = lattice_bonds(nx, ny, boundary)
    n = nx * ny
    d = side(as_operator(op1))
    total = _zero(d**n, storage)
    for k1, k2 in bonds:
        total = total + interact(op1, op2, k1, k2, n, storage)
    return total


def ising2d(
    b: float,
    nx: int,
    ny: int,
    boundary: Boundary = Boundary.APERIODIC,
    storage: Storage = Storage.SPARSE,
) -> Operator:
    return -lattice2d(SIGMA_Z, SIGMA_Z, nx, ny, boundary, storage) + float(b) * coll(SIGMA_X, nx * ny, storage)


# ---------------------------------------------------------------------------
# Ground and thermal states
# ---------------------------------------------------------------------------


def _fix_phase(v: np.ndarray) -> np.ndarray:
    pivot = v[int(np.argmax(np.abs(v)))]
    return v * (np.conj(pivot) / abs(pivot))


def grstate(h: Any) -> np.ndarray:
    """Ground state; the largest-magnitude component (first on ties) is real positive."""
    h = require_hermitian(h)
    if sparse.issparse(h) and side(h) > current_policy().ed_dense_max_dim:
        _, vecs = eigsh(h, k=1, which="SA")
        v = vecs[:, 0]
    else:
        _, vecs = np.linalg.eigh(to_dense(h))
        v = vecs[:, 0]
    v = np.asarray(v, dtype=complex)
    return _fix_phase(v / np.linalg.norm(v))


def spectrum(h: Any) -> tuple[np.ndarray, np.ndarray]:
    h = require_hermitian(h)
    return np.linalg.eigh(to_dense(h))


def thstate(h: Any, t: float | ThermalParams) -> np.ndarray:
    temperature = ThermalParams.coerce(t).temperature
    energies, vecs = spectrum(h)
    weights = np.exp(-(energies - energies.min()) / temperature)
    weights /= weights.sum()
    return (vecs * weights) @ vecs.conj().T


# ---------------------------------------------------------------------------
# Twin-command aliases (storage and boundary fixed)
# ---------------------------------------------------------------------------


def nnchainp(op1: Any, op2: Any, n: int, storage: Storage | None = None) -> Operator:
    return nnchain(op1, op2, n, Boundary.PERIODIC, storage)


def isingp(b: float, n: int, storage: Storage = Storage.DENSE) -> Operator:
    return ising(b, n, Boundary.PERIODIC, storage)


def heisenbergp(n: int, storage: Storage = Storage.DENSE) -> Operator:
    return heisenberg(n, Boundary.PERIODIC, storage)


def spquditop(op: Any, k: int, n: int) -> Operator:
    return quditop(op, k, n, Storage.SPARSE)


def sptwoquditop(op: Any, k1: int, k2: int, n: int) -> Operator:
    return twoquditop(op, k1, k2, n, Storage.SPARSE)


def spinteract(op1: Any, op2: Any, n1: int, n2: int, n: int) -> Operator:
    return interact(op1, op2, n1, n2, n, Storage.SPARSE)


def spcoll(op: Any, n: int) -> Operator:
    return coll(op, n, Storage.SPARSE)


def spnnchain(op1: Any, op2: Any, n: int) -> Operator:
    return nnchain(op1, op2, n, Boundary.APERIODIC, Storage.SPARSE)


def spnnchainp(op1: Any, op2: Any, n: int) -> Operator:
    return nnchain(op1, op2, n, Boundary.PERIODIC, Storage.SPARSE)


def spising(b: float, n: int) -> Operator:
    return ising(b, n, Boundary.APERIODIC, Storage.SPARSE)


def spisingp(b: float, n: int) -> Operator:
    return ising(b, n, Boundary.PERIODIC, Storage.SPARSE)


def splattice(op1: Any, op2: Any, nx: int, ny: int) -> Operator:
    return lattice2d(op1, op2, nx, ny, Boundary.APERIODIC, Storage.SPARSE)


def splatticep(op1: Any, op2: Any, nx: int, ny: int) -> Operator:
    return lattice2d(op1, op2, nx, ny, Boundary.PERIODIC, Storage.SPARSE)


def spising2dp(b: float, nx: int, ny: int) -> Operator:
    return ising2d(b, nx, ny, Boundary.PERIODIC, Storage.SPARSE)
