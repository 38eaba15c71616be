from __future__ import annotations

import itertools
from collections.abc import Iterable
from typing import Any, Optional, Union

import numpy as np

from chains.service import coll
from core.paulis import SIGMA_X, SIGMA_Y, SIGMA_Z
from core.service import as_operator, as_vector, density, is_vector_like, nm, register_size, side, to_dense
from entangle.models import BipartitionMask, SpinSqueezingReport
from errors import DimensionError, PermutationError
from permute.models import QuditList
from permute.service import reorder

MaskLike = Union[BipartitionMask, Iterable[int]]

_YY = np.kron(SIGMA_Y, SIGMA_Y)


def leading_permutation(side_a: Iterable[int], n: int) -> list[int]:
    """Permutation moving ``side_a`` to the most significant slots, relative order kept."""
    first = sorted(side_a, reverse=True)
    return first + [q for q in range(n, 0, -1) if q not in first]


# ---------------------------------------------------------------------------
# Partial transpose and negativity
# ---------------------------------------------------------------------------


def pt(s: Any, qudits: Union[QuditList, Iterable[int]], d: int = 2, normalize: bool = True) -> np.ndarray:
    if normalize:
        rho = density(s)
    elif is_vector_like(s):
        v = as_vector(s)
        rho = np.outer(v, v.conj())
    else:
        rho = to_dense(as_operator(s))
    n = register_size(side(rho), d)
    listed = QuditList.coerce(qudits, n)
    axes = list(range(2 * n))
    for k in listed.entries:
        axes[n - k], axes[2 * n - k] = axes[2 * n - k], axes[n - k]
    return np.transpose(rho.reshape((d,) * (2 * n)), axes).reshape(rho.shape)


def pt_nonorm(s: Any, qudits: Union[QuditList, Iterable[int]], d: int = 2) -> np.ndarray:
    return pt(s, qudits, d, normalize=False)


def negativity(s: Any, qudits: Union[QuditList, Iterable[int]], d: int = 2) -> float:
    values = np.linalg.eigvalsh(pt(s, qudits, d))
    return float(np.sum(np.clip(-values, 0.0, None)))


# ---------------------------------------------------------------------------
# Realignment
# ---------------------------------------------------------------------------


def realign(m: Any, dims: Optional[tuple[int, int]] = None) -> np.ndarray:
    """R[(i,k),(j,l)] = m[(i,j),(k,l)] for the split dA x dB (dA = dB by default)."""
    m = to_dense(as_operator(m))
    total = side(m)
    if dims is None:
        root = int(round(np.sqrt(total)))
        if root * root != total:
            raise DimensionError("DIMENSION_MISMATCH", f"side {total} does not factor as dA * dA; pass dims")
        dims = (root, root)
    d_a, d_b = int(dims[0]), int(dims[1])
    if d_a * d_b != total:
        raise DimensionError("DIMENSION_MISMATCH", f"side {total} does not factor as {d_a} x {d_b}")
    return m.reshape(d_a, d_b, d_a, d_b).transpose(0, 2, 1, 3).reshape(d_a * d_a, d_b * d_b)


def mrealign(m: Any, iperm: Iterable[int], d: int = 2) -> np.ndarray:
    """Permute the 2N tensor indices of ``m``.

    Labels 1..N are row indices and N+1..2N column indices, each from qudit N
    down to qudit 1; output index j takes input label ``iperm[j]``.
    """
    m = to_dense(as_operator(m))
    n = register_size(side(m), d)
    labels = [int(p) for p in iperm]
    if sorted(labels) != list(range(1, 2 * n + 1)):
        raise PermutationError("INVALID_PERMUTATION", f"{labels} is not a permutation of 1..{2 * n}")
    return np.transpose(m.reshape((d,) * (2 * n)), [p - 1 for p in labels]).reshape(m.shape)


def ccnr(s: Any, d: int = 2, split: Optional[MaskLike] = None) -> float:
    """Trace norm of the realigned state; a value above 1 certifies entanglement.

    The default split puts the ceil(N/2) most significant qudits on one side.
    """
    rho = density(s)
    n = register_size(side(rho), d)
    if n < 2:
        raise DimensionError("DIMENSION_MISMATCH", "realignment needs at least two qudits")
    if split is None:
        size_a = (n + 1) // 2
    else:
        mask = BipartitionMask.coerce(split, n)
        rho = reorder(rho, leading_permutation(mask.entries, n), d)
        size_a = len(mask.entries)
    matrix = realign(rho, (d**size_a, d ** (n - size_a)))
    return float(np.linalg.svd(matrix, compute_uv=False).sum())


# ---------------------------------------------------------------------------
# Two-qubit concurrence and pure-state Schmidt analysis
# ---------------------------------------------------------------------------


def concurrence(rho: Any) -> float:
    rho = density(rho)
    if rho.shape != (4, 4):
        raise DimensionError("DIMENSION_MISMATCH", f"concurrence needs a two-qubit state, got side {rho.shape[0]}")
    r = rho @ _YY @ rho.conj() @ _YY
    lam = np.sort(np.sqrt(np.clip(np.linalg.eigvals(r).real, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def schmidt(v: Any, mask: MaskLike, d: int = 2) -> np.ndarray:
    vec = nm(as_vector(v))
    n = register_size(vec.size, d)
    side_a = BipartitionMask.coerce(mask, n)
    moved = reorder(vec, leading_permutation(side_a.entries, n), d)
    return np.linalg.svd(moved.reshape(d ** len(side_a.entries), -1), compute_uv=False)


def bipartitions(n: int) -> list[BipartitionMask]:
    """One side of every bipartition of 1..N, each cut listed once (the side holding qudit N)."""
    out = []
    others = list(range(1, n))
    for size in range(0, n - 1):
        for combo in itertools.combinations(others, size):
            out.append(BipartitionMask(entries=tuple(sorted((*combo, n)))))
    return out


def overlapb(v: Any, d: int = 2) -> float:
    vec = as_vector(v)
    n = register_size(vec.size, d)
    if n < 2:
        raise DimensionError("DIMENSION_MISMATCH", "overlapb needs at least two qudits")
    return float(max(schmidt(vec, mask, d)[0] ** 2 for mask in bipartitions(n)))


# ---------------------------------------------------------------------------
# Optimal spin squeezing inequalities
# ---------------------------------------------------------------------------


def optspinsq(rho: Any) -> SpinSqueezingReport:
    rho = density(rho)
    n = register_size(side(rho), 2)
    spins = [to_dense(coll(sigma, n)) / 2.0 for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
    mean = np.array([np.trace(j @ rho).real for j in spins])
    second = np.array(
        [[np.trace((a @ b + b @ a) @ rho).real / 2.0 for b in spins] for a in spins]
    )
    gamma = second - np.outer(mean, mean)
    x = (n - 1) * gamma + second
    eig_x = np.linalg.eigvalsh(x)
    f1 = float(np.trace(gamma) - n / 2.0)
    f2 = float(eig_x[0] - np.trace(second) + n / 2.0)
    f3 = float((n - 1) * np.trace(gamma) - n * (n - 2) / 4.0 - eig_x[-1])
    f123 = (f1, f2, f3)
    return SpinSqueezingReport(fmin=min(f123), f123=f123)
