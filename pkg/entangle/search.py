"""Stochastic searches for the largest expectation value over separable states.

Every search runs the same three stages:

1. ``n_phase1`` random product states, evaluated in fixed-size chunks;
2. ``n_phase2`` greedy trials that perturb the best factors by
   ``step_const`` times a complex Gaussian and keep the move only if the
   value improves;
3. a deterministic polish that improves the best point until it stops moving.

Results are lower bounds on the true maximum. A fixed seed together with
fixed parameters reproduces the same result.
"""

from __future__ import annotations

import logging
from typing import Any, Optional

import numpy as np
from scipy.optimize import minimize

from core.service import as_operator, register_size, require_hermitian, side, to_dense
from entangle.criteria import MaskLike, bipartitions, leading_permutation
from entangle.models import BipartitionMask, SearchParams, SearchResult
from errors import DimensionError
from observability import get_logger, log_event
from permute.service import reorder
from randmat.service import make_rng
from runtime_metrics import record_counter_metric, timed

logger = get_logger(__name__)

_POLISH_TOL = 1e-13


def _prepare(op: Any) -> np.ndarray:
    return to_dense(require_hermitian(as_operator(op)))


def _random_factors(rng: np.random.Generator, batch: int, dims: list[int]) -> list[np.ndarray]:
    out = []
    for dim in dims:
        z = rng.standard_normal((batch, dim)) + 1j * rng.standard_normal((batch, dim))
        out.append(z / np.linalg.norm(z, axis=1, keepdims=True))
    return out


def _batched_product(factors: list[np.ndarray]) -> np.ndarray:
    psi = factors[0]
    for f in factors[1:]:
        psi = (psi[:, :, None] * f[:, None, :]).reshape(psi.shape[0], -1)
    return psi


def _batched_values(op: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return np.sum((psi.conj() @ op) * psi, axis=1).real


def _value(op: np.ndarray, factors: list[np.ndarray]) -> float:
    return float(_batched_values(op, _batched_product([f[None, :] for f in factors]))[0])


class _ProductSearch:
    """Maximize <psi|op|psi> over psi = kron(factors), blocks most significant first.

    With ``tied`` all blocks share one factor (symmetric product states).
    """

    def __init__(self, name: str, op: np.ndarray, dims: list[int], params: SearchParams, rng: np.random.Generator, tied: bool = False) -> None:
        self.name = name
        self.op = op
        self.dims = dims
        self.params = params
        self.rng = rng
        self.tied = tied

    def _expand(self, factors: list[np.ndarray]) -> list[np.ndarray]:
        return factors * len(self.dims) if self.tied else factors

    def _free_dims(self) -> list[int]:
        return self.dims[:1] if self.tied else self.dims

    def run(self) -> SearchResult:
        with timed(f"search.{self.name}.latency_ms"):
            best_value, best = self._phase1()
            best_value, best = self._phase2(best_value, best)
            if self.params.polish_sweeps:
                best_value, best = self._polish(best_value, best)
        record_counter_metric(name=f"search.{self.name}.runs")
        record_counter_metric(name=f"search.{self.name}.trials", value=self.params.n_phase1 + self.params.n_phase2)
        return SearchResult(value=best_value, factors=tuple(self._expand(best)))

    def _phase1(self) -> tuple[float, list[np.ndarray]]:
        best_value = -np.inf
        best: list[np.ndarray] = []
        remaining = self.params.n_phase1
        while remaining > 0:
            batch = min(remaining, self.params.chunk_size)
            candidates = _random_factors(self.rng, batch, self._free_dims())
            values = _batched_values(self.op, _batched_product(self._expand(candidates)))
            idx = int(np.argmax(values))
            if values[idx] > best_value:
                best_value = float(values[idx])
                best = [c[idx].copy() for c in candidates]
            remaining -= batch
        log_event(logger, logging.INFO, "search.phase1.done", search=self.name, trials=self.params.n_phase1, best=best_value)
        return best_value, best

    def _phase2(self, best_value: float, best: list[np.ndarray]) -> tuple[float, list[np.ndarray]]:
        step = self.params.step_const
        accepted = 0
        for _ in range(self.params.n_phase2):
            trial = []
            for f in best:
                moved = f + step * (self.rng.standard_normal(f.size) + 1j * self.rng.standard_normal(f.size))
                trial.append(moved / np.linalg.norm(moved))
            value = _value(self.op, self._expand(trial))
            if value > best_value:
                best_value, best = value, trial
                accepted += 1
        log_event(logger, logging.INFO, "search.phase2.done", search=self.name, trials=self.params.n_phase2, accepted=accepted, best=best_value)
        return best_value, best

    def _polish(self, best_value: float, best: list[np.ndarray]) -> tuple[float, list[np.ndarray]]:
        if self.tied:
            return self._polish_tied(best_value, best)
        factors = list(best)
        value = best_value
        sweeps = 0
        for sweeps in range(1, self.params.polish_sweeps + 1):
            for k in range(len(factors)):
                factors[k] = self._local_optimum(factors, k)
            new_value = _value(self.op, factors)
            improved = new_value - value
            value = max(value, new_value)
            if improved < _POLISH_TOL:
                break
        if value < best_value:
            value, factors = best_value, best
        log_event(logger, logging.INFO, "search.polish.done", search=self.name, sweeps=sweeps, best=value)
        return value, factors

    def _local_optimum(self, factors: list[np.ndarray], k: int) -> np.ndarray:
        """Top eigenvector of the operator seen by block k with the others fixed."""
        embed = np.ones((1, 1), dtype=complex)
        for j, f in enumerate(factors):
            part = np.eye(self.dims[j], dtype=complex) if j == k else f[:, None]
            embed = np.kron(embed, part)
        local = embed.conj().T @ self.op @ embed
        _, vecs = np.linalg.eigh((local + local.conj().T) / 2.0)
        return vecs[:, -1]

    def _polish_tied(self, best_value: float, best: list[np.ndarray]) -> tuple[float, list[np.ndarray]]:
        dim = self.dims[0]
        count = len(self.dims)

        def negative(x: np.ndarray) -> float:
            phi = x[:dim] + 1j * x[dim:]
            norm = np.linalg.norm(phi)
            if norm == 0:
                return 0.0
            return -_value(self.op, [phi / norm] * count)

        start = np.concatenate([best[0].real, best[0].imag])
        result = minimize(negative, start, method="BFGS", options={"maxiter": 20 * self.params.polish_sweeps})
        phi = result.x[:dim] + 1j * result.x[dim:]
        if np.linalg.norm(phi) > 0 and -float(result.fun) > best_value:
            best_value, best = -float(result.fun), [phi / np.linalg.norm(phi)]
        log_event(logger, logging.INFO, "search.polish.done", search=self.name, iterations=int(result.nit), best=best_value)
        return best_value, best


def _resolve(par: Optional[SearchParams], rng: Optional[np.random.Generator], seed: Optional[int]) -> tuple[SearchParams, np.random.Generator]:
    return par or SearchParams(), rng if rng is not None else make_rng(seed)


def maxsep(
    op: Any,
    d: int = 2,
    par: Optional[SearchParams] = None,
    rng: Optional[np.random.Generator] = None,
    seed: Optional[int] = None,
) -> SearchResult:
    """Largest <op> over fully separable N-qudit product states."""
    matrix = _prepare(op)
    n = register_size(side(matrix), d)
    if n < 1:
        raise DimensionError("DIMENSION_MISMATCH", "maxsep needs at least one qudit")
    params, generator = _resolve(par, rng, seed)
    return _ProductSearch("maxsep", matrix, [d] * n, params, generator).run()


def maxsymsep(
    op: Any,
    d: int = 2,
    par: Optional[SearchParams] = None,
    rng: Optional[np.random.Generator] = None,
    seed: Optional[int] = None,
) -> tuple[float, np.ndarray]:
    """Largest <op> over symmetric product states phi x ... x phi; returns (value, phi)."""
    matrix = _prepare(op)
    n = register_size(side(matrix), d)
    if n < 1:
        raise DimensionError("DIMENSION_MISMATCH", "maxsymsep needs at least one qudit")
    params, generator = _resolve(par, rng, seed)
    result = _ProductSearch("maxsymsep", matrix, [d] * n, params, generator, tied=True).run()
    return result.value, result.factors[0]


def maxbisep(
    op: Any,
    mask: MaskLike,
    d: int = 2,
    par: Optional[SearchParams] = None,
    rng: Optional[np.random.Generator] = None,
    seed: Optional[int] = None,
) -> SearchResult:
    """Largest <op> over states that are products across the cut ``mask`` | complement.

    The factors are returned for the reordered register where ``mask`` leads.
    """
    matrix = _prepare(op)
    n = register_size(side(matrix), d)
    side_a = BipartitionMask.coerce(mask, n)
    moved = to_dense(reorder(matrix, leading_permutation(side_a.entries, n), d))
    params, generator = _resolve(par, rng, seed)
    dims = [d ** len(side_a.entries), d ** (n - len(side_a.entries))]
    return _ProductSearch("maxbisep", moved, dims, params, generator).run()


def maxb(
    op: Any,
    d: int = 2,
    par: Optional[SearchParams] = None,
    rng: Optional[np.random.Generator] = None,
    seed: Optional[int] = None,
) -> SearchResult:
    """Largest <op> over biseparable states: the best ``maxbisep`` over every cut."""
    matrix = _prepare(op)
    n = register_size(side(matrix), d)
    if n < 2:
        raise DimensionError("DIMENSION_MISMATCH", "maxb needs at least two qudits")
    params, generator = _resolve(par, rng, seed)
    best: Optional[SearchResult] = None
    for mask in bipartitions(n):
        result = maxbisep(matrix, mask, d, params, generator)
        if best is None or result.value > best.value:
            best = result
    assert best is not None
    log_event(logger, logging.INFO, "search.maxb.done", cuts=len(bipartitions(n)), best=best.value)
    return best
