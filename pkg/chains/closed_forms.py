"""Closed-form and finite-size quantities of the transverse-field Ising chain.

All values are per site for H = -sum z_k z_{k+1} + b sum x_k. The single
mode energy is eps(k) = sqrt(1 + b^2 - 2 b cos k); finite periodic chains
use the even-parity momenta k = (2j + 1) pi / N.
"""

from __future__ import annotations

import itertools
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize
from scipy.special import logsumexp

from chains.models import Boundary, IsingMethod, ThermalParams, XYParams
from chains.service import ising, spectrum
from core.models import Storage
from core.policy import current_policy
from core.service import mineig
from errors import ParameterError

_QUAD_TOL = 1e-12


def _dispersion(b: float) -> Callable[[float], float]:
    return lambda k: float(np.sqrt(max(0.0, 1.0 + b * b - 2.0 * b * np.cos(k))))


def _band_average(integrand: Callable[[float], float]) -> float:
    # integrands are even in k; (1/2pi) * int_0^{2pi} = (1/pi) * int_0^pi
    value, _ = quad(integrand, 0.0, np.pi, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200)
    return value / np.pi


def _check_temperature(t: float | ThermalParams) -> float:
    return ThermalParams.coerce(t).temperature


def _check_sites(n: int) -> int:
    if int(n) < 2:
        raise ParameterError(f"finite chain needs N >= 2, got {n}")
    return int(n)


def _chain_spectrum(b: float, n: int) -> np.ndarray:
    energies, _ = spectrum(ising(b, n, Boundary.PERIODIC))
    return energies


def fermion_energies(b: float, n: int) -> np.ndarray:
    ks = (2.0 * np.arange(n) + 1.0) * np.pi / n
    return np.sqrt(np.maximum(0.0, 1.0 + b * b - 2.0 * b * np.cos(ks)))


def ising_ground(b: float, n: Optional[int] = None, method: IsingMethod | str = IsingMethod.EXACT) -> float:
    b = float(b)
    if n is None:
        eps = _dispersion(b)
        return -_band_average(eps)
    n = _check_sites(n)
    if IsingMethod(method) == IsingMethod.FERMION:
        if n % 2:
            raise ParameterError(f"fermion fast path needs an even chain length, got {n}")
        return -float(fermion_energies(b, n).sum()) / n
    storage = Storage.SPARSE if 2**n > current_policy().ed_dense_max_dim else Storage.DENSE
    return mineig(ising(b, n, Boundary.PERIODIC, storage)) / n


def ising_free(b: float, t: float | ThermalParams, n: Optional[int] = None) -> float:
    b, t = float(b), _check_temperature(t)
    if n is None:
        eps = _dispersion(b)
        # ln(2 cosh x) = |x| + ln(1 + exp(-2|x|))
        return -t * _band_average(lambda k: eps(k) / t + np.log1p(np.exp(-2.0 * eps(k) / t)))
    n = _check_sites(n)
    energies = _chain_spectrum(b, n)
    return -t * float(logsumexp(-energies / t)) / n


def ising_thermal(b: float, t: float | ThermalParams, n: Optional[int] = None) -> float:
    b, t = float(b), _check_temperature(t)
    if n is None:
        eps = _dispersion(b)
        return -_band_average(lambda k: eps(k) * np.tanh(eps(k) / t))
    n = _check_sites(n)
    energies = _chain_spectrum(b, n)
    weights = np.exp(-(energies - energies.min()) / t)
    return float(np.dot(weights, energies) / weights.sum()) / n


# ---------------------------------------------------------------------------
# Classical (product-state) ground energies
# ---------------------------------------------------------------------------


def _unit(theta: float, phi: float) -> np.ndarray:
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def classical_chain_ground(couplings: np.ndarray, field: np.ndarray) -> float:
    """Minimum per-site energy of sum_a J_a s_a s'_a + h.s over two-sublattice spin configurations."""
    couplings = np.asarray(couplings, dtype=float)
    field = np.asarray(field, dtype=float)

    def energy(angles: np.ndarray) -> float:
        u, v = _unit(angles[0], angles[1]), _unit(angles[2], angles[3])
        return float(np.dot(couplings, u * v) + 0.5 * np.dot(field, u + v))

    thetas = (0.3, np.pi / 2, np.pi - 0.3)
    phis = (0.0, np.pi / 2, np.pi, 3 * np.pi / 2)
    starts = list(itertools.product(thetas, phis))
    best = np.inf
    for (t1, p1), (t2, p2) in itertools.product(starts, starts):
        result = minimize(energy, np.array([t1, p1, t2, p2]), method="BFGS")
        best = min(best, float(result.fun))
    return best


def ising_classical_ground(b: float) -> float:
    b = float(b)
    if abs(b) <= 2.0:
        return -1.0 - b * b / 4.0
    return -abs(b)


def xy_classical_ground(params: XYParams) -> float:
    return classical_chain_ground(np.array([params.jx, params.jy, 0.0]), np.array([params.b, 0.0, 0.0]))
