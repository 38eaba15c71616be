from __future__ import annotations

import logging
from typing import Any, Optional

import numpy as np

from config import TWIRL_ITERATIONS
from core.models import RegisterShape
from core.service import density, ensure_within_cap, mkron, pkron, register_size, side
from errors import ParameterError
from observability import get_logger, log_event
from permute.service import keep

logger = get_logger(__name__)

RandomSource = np.random.Generator


def make_rng(seed: Optional[int] = None) -> RandomSource:
    if seed is not None and int(seed) < 0:
        raise ParameterError(f"seed must be non-negative, got {seed}")
    return np.random.default_rng(None if seed is None else int(seed))


def _source(rng: Optional[RandomSource]) -> RandomSource:
    return rng if rng is not None else make_rng()


def _gaussian(rng: RandomSource, shape: Any) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rvec(n: int, d: int = 2, rng: Optional[RandomSource] = None) -> np.ndarray:
    """Uniformly distributed unit vector on the d^N dimensional complex sphere."""
    dim = RegisterShape(n_qudits=n, dim=d).total_dim
    ensure_within_cap(dim)
    v = _gaussian(_source(rng), dim)
    return v / np.linalg.norm(v)


def rproduct(n: int, d: int = 2, rng: Optional[RandomSource] = None) -> np.ndarray:
    RegisterShape(n_qudits=n, dim=d)
    ensure_within_cap(d**n)
    source = _source(rng)
    return mkron(*[rvec(1, d, source) for _ in range(n)])


def rdmat(n: int, d: int = 2, rng: Optional[RandomSource] = None) -> np.ndarray:
    """Hilbert-Schmidt random density matrix: half of a random 2N-qudit pure state."""
    RegisterShape(n_qudits=n, dim=d)
    v = rvec(2 * n, d, rng)
    return keep(v, list(range(1, n + 1)), d)


def runitary(n: int, d: int = 2, rng: Optional[RandomSource] = None) -> np.ndarray:
    """Haar random unitary from the QR decomposition of a complex Gaussian matrix.

    Columns are rephased so the triangular factor has a positive diagonal.
    """
    dim = RegisterShape(n_qudits=n, dim=d).total_dim
    ensure_within_cap(dim)
    z = _gaussian(_source(rng), (dim, dim)) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))[None, :]


def _rotate(rho: np.ndarray, u: np.ndarray, n: int) -> np.ndarray:
    w = pkron(u, n)
    return w @ rho @ w.conj().T


def _difference(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(np.abs(a - b) ** 2))


def twirl(
    rho: Any, d: int = 2, n_it: int = TWIRL_ITERATIONS, rng: Optional[RandomSource] = None
) -> tuple[np.ndarray, float]:
    """Average over identical unitaries on every qudit by repeated halving.

    Each round replaces rho with (rho + W rho W^dagger) / 2 for a fresh
    W = U x ... x U. Returns the result and its entrywise squared distance
    from the input.
    """
    if n_it < 0:
        raise ParameterError(f"n_it must be non-negative, got {n_it}")
    start = density(rho)
    n = register_size(side(start), d)
    source = _source(rng)
    out = start
    for _ in range(n_it):
        out = (out + _rotate(out, runitary(1, d, source), n)) / 2.0
    difference = _difference(start, out)
    log_event(logger, logging.INFO, "twirl.done", iterations=n_it, qudits=n, difference=difference)
    return out, difference


def twirl2(
    rho: Any, d: int = 2, n_it: int = TWIRL_ITERATIONS, rng: Optional[RandomSource] = None
) -> tuple[float, np.ndarray]:
    """Largest change of rho under n_it random multilateral rotations, and the single-qudit U causing it."""
    if n_it < 1:
        raise ParameterError(f"n_it must be positive, got {n_it}")
    start = density(rho)
    n = register_size(side(start), d)
    source = _source(rng)
    worst = -1.0
    worst_u = np.eye(d, dtype=complex)
    for _ in range(n_it):
        u = runitary(1, d, source)
        value = _difference(start, _rotate(start, u, n))
        if value > worst:
            worst, worst_u = value, u
    log_event(logger, logging.INFO, "twirl2.done", iterations=n_it, qudits=n, difference=worst)
    return worst, worst_u
