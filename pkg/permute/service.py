from __future__ import annotations

from collections.abc import Iterable
from typing import Any, Union

import numpy as np
from scipy import sparse

from core.models import Storage
from core.service import (
    as_operator,
    as_vector,
    ensure_within_cap,
    is_vector_like,
    ketbra,
    nm,
    register_size,
    side,
    to_dense,
)
from errors import DimensionError, PermutationError
from permute.models import Permutation, QuditList, ShiftDirection

PermLike = Union[Permutation, Iterable[int]]
QuditsLike = Union[QuditList, Iterable[int]]


def _axes(perm: Permutation) -> list[int]:
    # tensor axis a carries qudit N - a
    return [perm.n - p for p in perm.entries]


def _checked(perm: PermLike, n: int) -> Permutation:
    resolved = Permutation.coerce(perm)
    if resolved.n != n:
        raise DimensionError("DIMENSION_MISMATCH", f"permutation of {resolved.n} qudits applied to {n} qudits")
    return resolved


def compose_permutations(outer: PermLike, inner: PermLike) -> Permutation:
    """Permutation equal to applying ``inner`` first and then ``outer``."""
    outer_p, inner_p = Permutation.coerce(outer), Permutation.coerce(inner)
    if outer_p.n != inner_p.n:
        raise DimensionError("DIMENSION_MISMATCH", "permutations act on different register sizes")
    n = outer_p.n
    return Permutation(entries=tuple(inner_p.entries[n - p] for p in outer_p.entries))


def reorder(s: Any, perm: PermLike, d: int = 2) -> Any:
    if is_vector_like(s):
        v = as_vector(s)
        n = register_size(v.size, d)
        p = _checked(perm, n)
        return np.transpose(v.reshape((d,) * n), _axes(p)).reshape(-1)
    m = as_operator(s)
    n = register_size(side(m), d)
    p = _checked(perm, n)
    if sparse.issparse(m):
        pm = reordermat(p, d, Storage.SPARSE)
        return (pm @ m @ pm.T).tocsr()
    axes = _axes(p)
    tensor = m.reshape((d,) * (2 * n))
    return np.transpose(tensor, axes + [a + n for a in axes]).reshape(m.shape)


def reordervec(perm: PermLike, d: int = 2) -> np.ndarray:
    """Index map pi with reorder(e_i) = e_pi[i]."""
    p = Permutation.coerce(perm)
    dim = d**p.n
    moved = np.transpose(np.arange(dim).reshape((d,) * p.n), _axes(p)).reshape(-1)
    pi = np.empty(dim, dtype=np.int64)
    pi[moved] = np.arange(dim)
    return pi


def reordermat(perm: PermLike, d: int = 2, storage: Storage = Storage.DENSE) -> Any:
    pi = reordervec(perm, d)
    dim = pi.size
    ensure_within_cap(dim, storage)
    if Storage(storage) == Storage.SPARSE:
        ones = np.ones(dim, dtype=complex)
        return sparse.csr_matrix((ones, (pi, np.arange(dim))), shape=(dim, dim))
    out = np.zeros((dim, dim), dtype=complex)
    out[pi, np.arange(dim)] = 1.0
    return out


def spreordermat(perm: PermLike, d: int = 2) -> sparse.csr_matrix:
    return reordermat(perm, d, Storage.SPARSE)


def shift_permutation(n: int, direction: ShiftDirection | str) -> Permutation:
    if ShiftDirection(direction) == ShiftDirection.LEFT:
        return Permutation(entries=(1, *range(n, 1, -1)))
    return Permutation(entries=(*range(n - 1, 0, -1), n))


def shift_qudits(s: Any, direction: ShiftDirection | str, d: int = 2) -> Any:
    n = qudit_count(s, d)
    return reorder(s, shift_permutation(n, direction), d)


def shift_qudits_left(s: Any, d: int = 2) -> Any:
    return shift_qudits(s, ShiftDirection.LEFT, d)


def shift_qudits_right(s: Any, d: int = 2) -> Any:
    return shift_qudits(s, ShiftDirection.RIGHT, d)


def swapqudits(s: Any, k: int, l: int, d: int = 2) -> Any:
    n = qudit_count(s, d)
    if k == l:
        raise PermutationError("INVALID_QUDIT_LIST", f"cannot swap qudit {k} with itself")
    QuditList.coerce([k, l], n)
    entries = list(range(n, 0, -1))
    entries[n - k], entries[n - l] = entries[n - l], entries[n - k]
    return reorder(s, entries, d)


def qudit_count(s: Any, d: int = 2) -> int:
    if is_vector_like(s):
        return register_size(as_vector(s).size, d)
    return register_size(side(as_operator(s)), d)


def _split_axes(kept: QuditList, n: int) -> tuple[list[int], list[int]]:
    kept_axes = [n - q for q in sorted(kept.entries, reverse=True)]
    traced_axes = [a for a in range(n) if a not in kept_axes]
    return kept_axes, traced_axes


def keep(s: Any, qudits: QuditsLike, d: int = 2, normalize: bool = True) -> np.ndarray:
    """Reduced density matrix of ``qudits``; kept qudits keep their relative order."""
    if is_vector_like(s):
        v = nm(s) if normalize else as_vector(s)
        n = register_size(v.size, d)
        kept = QuditList.coerce(qudits, n)
        kept_axes, traced_axes = _split_axes(kept, n)
        t = np.transpose(v.reshape((d,) * n), kept_axes + traced_axes).reshape(d ** len(kept_axes), -1)
        return t @ t.conj().T
    m = to_dense(as_operator(s))
    if normalize:
        m = nm(m)
    n = register_size(side(m), d)
    kept = QuditList.coerce(qudits, n)
    kept_axes, traced_axes = _split_axes(kept, n)
    order = kept_axes + traced_axes
    dk, dt = d ** len(kept_axes), d ** len(traced_axes)
    t = np.transpose(m.reshape((d,) * (2 * n)), order + [a + n for a in order]).reshape(dk, dt, dk, dt)
    return np.einsum("ajbj->ab", t)


def keep_nonorm(s: Any, qudits: QuditsLike, d: int = 2) -> np.ndarray:
    return keep(s, qudits, d, normalize=False)


def remove(s: Any, qudits: QuditsLike, d: int = 2) -> np.ndarray:
    n = qudit_count(s, d)
    traced = QuditList.coerce(qudits, n)
    if not traced.entries:
        return ketbra(s)
    return keep(s, traced.complement(n), d)
