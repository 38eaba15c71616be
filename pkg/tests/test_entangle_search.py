from __future__ import annotations

import time

import numpy as np
import pytest

from chains import coll
from core import ketbra, maxeig, mkron
from core.paulis import SIGMA_X, SIGMA_Y, SIGMA_Z
from entangle import SearchParams, SearchResult, maxb, maxbisep, maxsep, maxsymsep
from errors import DimensionError, HermiticityError, ParameterError, PermutationError
from randmat import make_rng, rdmat
from runtime_metrics import get_runtime_metrics_snapshot, reset_runtime_metrics

FAST = SearchParams(n_phase1=400, n_phase2=400, step_const=0.02, polish_sweeps=50, chunk_size=128)
S = 1.0 / np.sqrt(2.0)
BELL = np.array([S, 0, 0, S])


def _jx2_jy2(n: int) -> np.ndarray:
    jx, jy = coll(SIGMA_X, n) / 2, coll(SIGMA_Y, n) / 2
    return jx @ jx + jy @ jy


def _random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


def test_search_params_defaults_and_parse() -> None:
    defaults = SearchParams()
    assert (defaults.n_phase1, defaults.n_phase2, defaults.step_const) == (10000, 20000, 0.005)
    parsed = SearchParams.parse("100, 200, 0.01")
    assert (parsed.n_phase1, parsed.n_phase2, parsed.step_const) == (100, 200, 0.01)
    for bad in ("1,2", "a,b,c", ""):
        with pytest.raises(ParameterError):
            SearchParams.parse(bad)
    with pytest.raises(ValueError):
        SearchParams(n_phase1=0)
    with pytest.raises(ValueError):
        SearchParams(step_const=-0.1)


def test_maxsep_of_collective_spin_operator() -> None:
    result = maxsep(_jx2_jy2(4), par=FAST, seed=1)
    assert isinstance(result, SearchResult)
    assert result.value == pytest.approx(5.0, abs=0.01)
    assert len(result.factors) == 4
    psi = mkron(*result.factors)
    assert np.vdot(psi, _jx2_jy2(4) @ psi).real == pytest.approx(result.value, abs=1e-9)


def test_maxsep_trivial_cases() -> None:
    rng = make_rng(71)
    single = _random_hermitian(rng, 3)
    assert float(maxsep(single, d=3, par=FAST, seed=2)) == pytest.approx(maxeig(single), abs=1e-6)
    assert maxsep(np.kron(SIGMA_Z, SIGMA_Z), par=FAST, seed=3).value == pytest.approx(1.0, abs=1e-6)


def test_maxsep_never_exceeds_largest_eigenvalue() -> None:
    rng = make_rng(72)
    for _ in range(3):
        op = _random_hermitian(rng, 8)
        assert maxsep(op, par=FAST, rng=rng).value <= maxeig(op) + 1e-9


def test_maxsep_without_polish_still_returns_lower_bound() -> None:
    par = SearchParams(n_phase1=200, n_phase2=100, step_const=0.05, polish_sweeps=0)
    value = maxsep(_jx2_jy2(3), par=par, seed=4).value
    assert 0.0 < value <= maxsep(_jx2_jy2(3), par=FAST, seed=4).value + 1e-9


def test_seeded_searches_are_reproducible() -> None:
    op = _jx2_jy2(3)
    first = maxsep(op, par=FAST, seed=5)
    second = maxsep(op, par=FAST, seed=5)
    assert first.value == second.value
    for a, b in zip(first.factors, second.factors):
        np.testing.assert_array_equal(a, b)
    assert maxsymsep(op, par=FAST, seed=6)[0] == maxsymsep(op, par=FAST, seed=6)[0]
    assert maxb(op, par=FAST, seed=7).value == maxb(op, par=FAST, seed=7).value


def test_search_records_runtime_metrics() -> None:
    reset_runtime_metrics()
    par = SearchParams(n_phase1=300, n_phase2=50, step_const=0.01, polish_sweeps=5, chunk_size=7)
    maxsep(np.kron(SIGMA_Z, SIGMA_X), par=par, seed=8)
    counters = get_runtime_metrics_snapshot()["counters"]
    assert counters["search.maxsep.runs"] == 1
    assert counters["search.maxsep.trials"] == 350
    assert "search.maxsep.latency_ms" in get_runtime_metrics_snapshot()["timers"]


def test_maxsep_rejects_non_hermitian() -> None:
    with pytest.raises(HermiticityError):
        maxsep(np.array([[0, 1], [0, 0]]), par=FAST, seed=9)


def test_maxsymsep_examples() -> None:
    value, phi = maxsymsep(coll(SIGMA_Z, 3), par=FAST, seed=10)
    assert value == pytest.approx(3.0, abs=1e-6)
    assert abs(phi[0]) == pytest.approx(1.0, abs=1e-3)
    assert np.linalg.norm(phi) == pytest.approx(1.0)
    assert maxsymsep(np.kron(SIGMA_Z, SIGMA_Z), par=FAST, seed=11)[0] == pytest.approx(1.0, abs=1e-6)


def test_maxsymsep_is_bounded_by_maxsep() -> None:
    rng = make_rng(73)
    swap = np.eye(4)[[0, 2, 1, 3]]
    wide = SearchParams(n_phase1=3000, n_phase2=200, step_const=0.02, polish_sweeps=100)
    for _ in range(3):
        a = _random_hermitian(rng, 4)
        op = (a + swap @ a @ swap) / 2
        symmetric, _ = maxsymsep(op, par=FAST, rng=rng)
        assert symmetric <= maxsep(op, par=wide, rng=rng).value + 1e-6


def test_maxbisep_examples() -> None:
    op = _jx2_jy2(4)
    product = maxsep(op, par=FAST, seed=12).value
    assert maxbisep(op, [1, 2], par=FAST, seed=13).value >= product - 1e-6
    bell_pair = ketbra(np.kron(BELL, BELL))
    assert maxbisep(bell_pair, [1, 2], par=FAST, seed=14).value == pytest.approx(1.0, abs=1e-6)
    assert maxbisep(bell_pair, [1, 3], par=FAST, seed=15).value < 0.5 + 1e-6


def test_maxbisep_mask_and_complement_agree() -> None:
    op = _jx2_jy2(3)
    left = maxbisep(op, [1], par=FAST, seed=16).value
    right = maxbisep(op, [2, 3], par=FAST, seed=17).value
    assert left == pytest.approx(right, abs=1e-4)


def test_maxbisep_rejects_bad_masks() -> None:
    with pytest.raises(PermutationError):
        maxbisep(_jx2_jy2(3), [1, 2, 3], par=FAST, seed=18)
    with pytest.raises(PermutationError):
        maxbisep(_jx2_jy2(3), [4], par=FAST, seed=18)


def test_maxb_of_collective_spin_operator() -> None:
    par = SearchParams(n_phase1=1000, n_phase2=500, step_const=0.02, polish_sweeps=100, chunk_size=256)
    result = maxb(_jx2_jy2(4), par=par, seed=19)
    assert result.value == pytest.approx(3.5 + np.sqrt(3.0), abs=0.01)
    assert result.value >= maxsep(_jx2_jy2(4), par=FAST, seed=20).value - 1e-9


@pytest.mark.slow
def test_default_search_settings_reach_known_bounds_in_time() -> None:
    started = time.perf_counter()
    separable = maxsep(_jx2_jy2(4), seed=1)
    biseparable = maxb(_jx2_jy2(4), seed=19)
    elapsed = time.perf_counter() - started
    assert separable.value == pytest.approx(5.0, abs=0.01)
    assert biseparable.value == pytest.approx(3.5 + np.sqrt(3.0), abs=0.01)
    assert elapsed < 60.0


def test_maxb_of_product_operator_and_small_registers() -> None:
    assert maxb(mkron(SIGMA_Z, SIGMA_Z, SIGMA_Z), par=FAST, seed=21).value == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(DimensionError):
        maxb(SIGMA_Z, par=FAST, seed=22)


def test_biseparable_maximum_of_random_state_projector() -> None:
    rng = make_rng(74)
    rho = rdmat(3, rng=rng)
    assert maxb(rho, par=FAST, rng=rng).value <= maxeig(rho) + 1e-9
