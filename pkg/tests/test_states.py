from __future__ import annotations

import itertools

import numpy as np
import pytest

from chains import Boundary, cluster_hamiltonian, coll
from core import RegisterShape, ex
from core.paulis import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z
from entangle import ccnr, pt
from errors import ParameterError, QuditError
from permute import keep, reorder, swapqudits
from states import (
    GellMannVariant,
    GraphSpec,
    bell_states,
    bes_horodecki3x3,
    bes_horodecki4x2,
    bes_upb3x3,
    cstate,
    dstate,
    gellmann_basis,
    ghzstate,
    gstate,
    gstate_stabilizer,
    mestate,
    mmstate,
    named_state,
    orthogobs,
    pauli_basis,
    rstate,
    singlet,
    smolinstate,
    standard_gates,
    su3_alternative,
    upb_tiles,
    wstate,
)

S = 1.0 / np.sqrt(2.0)


def _assert_density(rho: np.ndarray) -> None:
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(rho).min() >= -1e-12


def test_ghz_state() -> None:
    np.testing.assert_allclose(ghzstate(2), [S, 0, 0, S])
    v = ghzstate(3)
    assert np.flatnonzero(v).tolist() == [0, 7]
    assert np.linalg.norm(ghzstate(10)) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        ghzstate(0)


def test_w_and_dicke_states() -> None:
    np.testing.assert_allclose(wstate(2), [0, S, S, 0])
    w3 = wstate(3)
    np.testing.assert_allclose(w3[[1, 2, 4]], [1 / np.sqrt(3)] * 3)
    np.testing.assert_allclose(dstate(1, 3), w3)
    np.testing.assert_allclose(dstate(0, 4), np.eye(16)[0])
    d24 = dstate(2, 4)
    assert np.count_nonzero(d24) == 6
    np.testing.assert_allclose(d24[np.flatnonzero(d24)], [1 / np.sqrt(6)] * 6)
    with pytest.raises(ParameterError):
        wstate(1)
    with pytest.raises(ParameterError):
        dstate(5, 4)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dicke_state_is_permutation_symmetric(n: int) -> None:
    for m in range(n + 1):
        v = dstate(m, n)
        for k, l in itertools.combinations(range(1, n + 1), 2):
            np.testing.assert_allclose(swapqudits(v, k, l), v, atol=1e-12)


def test_graph_state_examples() -> None:
    np.testing.assert_allclose(gstate(np.zeros((2, 2), dtype=int)), [0.5, 0.5, 0.5, 0.5])
    np.testing.assert_allclose(gstate([[0, 1], [1, 0]]), [0.5, 0.5, 0.5, -0.5])
    np.testing.assert_allclose(gstate(GraphSpec.line(3)), cstate(3))


@pytest.mark.parametrize(
    "adjacency",
    [
        [[0, 1], [1, 2]],
        [[0, 1], [0, 0]],
        [[1, 0], [0, 0]],
        [[0, 1, 0], [1, 0, 1]],
    ],
)
def test_graph_spec_rejects_malformed_adjacency(adjacency: list[list[int]]) -> None:
    with pytest.raises(QuditError) as info:
        GraphSpec.coerce(adjacency)
    assert info.value.code == "INVALID_GRAPH"


def test_stabilizers_of_simple_graphs() -> None:
    empty = gstate_stabilizer(np.zeros((2, 2), dtype=int))
    np.testing.assert_allclose(empty.generators[0], np.kron(IDENTITY_2, SIGMA_X))
    np.testing.assert_allclose(empty.generators[1], np.kron(SIGMA_X, IDENTITY_2))

    edge = gstate_stabilizer([[0, 1], [1, 0]])
    g1, g2 = edge.generators
    np.testing.assert_allclose(g1, np.kron(SIGMA_Z, SIGMA_X))
    np.testing.assert_allclose(g1 @ g2, g2 @ g1)


def test_stabilizers_fix_random_graph_state() -> None:
    rng = np.random.default_rng(21)
    upper = np.triu(rng.integers(0, 2, size=(4, 4)), 1)
    graph = GraphSpec.coerce(upper + upper.T)
    state = gstate(graph)
    generators = gstate_stabilizer(graph).generators
    for g in generators:
        np.testing.assert_allclose(g @ state, state, atol=1e-12)
        np.testing.assert_allclose(g @ g, np.eye(16), atol=1e-12)
    for a, b in itertools.combinations(generators, 2):
        np.testing.assert_allclose(a @ b, b @ a, atol=1e-12)


def test_cluster_states_are_ground_states() -> None:
    assert ex(cluster_hamiltonian(4), cstate(4)).real == pytest.approx(-4.0)
    assert ex(cluster_hamiltonian(4, Boundary.PERIODIC), rstate(4)).real == pytest.approx(-4.0)
    for g in gstate_stabilizer(GraphSpec.line(3)).generators:
        assert ex(g, cstate(3)).real == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        rstate(2)


def test_maximally_mixed_state() -> None:
    np.testing.assert_allclose(mmstate(RegisterShape(n_qudits=1)), np.diag([0.5, 0.5]))
    rho = mmstate(RegisterShape(n_qudits=2, dim=3))
    assert np.trace(rho @ rho).real == pytest.approx(1 / 9)
    np.testing.assert_allclose(reorder(rho, [1, 2], d=3), rho)


def test_maximally_entangled_state() -> None:
    np.testing.assert_allclose(mestate(2), [S, 0, 0, S])
    np.testing.assert_allclose(keep(mestate(3), [1], d=3), np.eye(3) / 3, atol=1e-12)
    assert np.linalg.norm(mestate(5)) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        mestate(1)


def test_singlets() -> None:
    np.testing.assert_allclose(singlet(2), [0, S, -S, 0])
    four = singlet(4)
    scale = 1 / (2 * np.sqrt(3))
    assert four[0b1100] == pytest.approx(2 * scale)
    assert four[0b0011] == pytest.approx(2 * scale)
    for index in (0b0101, 0b1010, 0b0110, 0b1001):
        assert four[index] == pytest.approx(-scale)
    for n, v in ((2, singlet(2)), (4, four)):
        for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z):
            np.testing.assert_allclose(coll(sigma, n) @ v, np.zeros(2**n), atol=1e-12)
    with pytest.raises(QuditError) as info:
        singlet(3)
    assert info.value.code == "UNSUPPORTED_REGISTER"


def test_bell_states_are_orthonormal() -> None:
    gram = np.array([[np.vdot(a, b) for b in bell_states()] for a in bell_states()])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-12)


def test_smolin_state() -> None:
    rho = smolinstate()
    _assert_density(rho)
    assert np.linalg.matrix_rank(rho, tol=1e-9) == 4
    assert np.linalg.eigvalsh(pt(rho, [1, 2])).min() >= -1e-10
    np.testing.assert_allclose(reorder(rho, [2, 1, 4, 3]), rho, atol=1e-12)


# Horodecki 3x3 and 2x4 families and the Tiles UPB, in the standard published form.
def test_bound_entangled_states_are_ppt_and_some_is_ccnr_detected() -> None:
    h33 = bes_horodecki3x3(0.5)
    h42 = bes_horodecki4x2(0.5)
    upb = bes_upb3x3()
    for rho in (h33, h42, upb):
        _assert_density(rho)
    assert np.linalg.eigvalsh(pt(h33, [1], d=3)).min() >= -1e-10
    assert np.linalg.eigvalsh(pt(h42, [1])).min() >= -1e-10
    assert np.linalg.eigvalsh(pt(upb, [1], d=3)).min() >= -1e-10
    detected = [ccnr(h33, d=3), ccnr(upb, d=3), ccnr(h42, split=[1])]
    assert max(detected) > 1.0
    assert ccnr(upb, d=3) > 1.0


def test_horodecki_parameters() -> None:
    assert np.trace(bes_horodecki3x3(0.25)).real == pytest.approx(1.0)
    for bad in (0.0, 1.0, -0.2):
        with pytest.raises(ParameterError):
            bes_horodecki3x3(bad)
        with pytest.raises(ParameterError):
            bes_horodecki4x2(bad)


def test_upb_tiles() -> None:
    tiles = upb_tiles()
    assert len(tiles) == 5
    gram = np.array([[np.vdot(a, b) for b in tiles] for a in tiles])
    np.testing.assert_allclose(gram, np.eye(5), atol=1e-12)
    assert np.linalg.matrix_rank(bes_upb3x3(), tol=1e-9) == 4


def test_standard_gates() -> None:
    gates = standard_gates()
    np.testing.assert_allclose(gates.hadamard @ gates.hadamard, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(gates.cnot @ gates.cnot, np.eye(4))
    np.testing.assert_allclose(gates.hadamard @ [1, 0], [S, S])
    # control is qubit 2
    np.testing.assert_allclose(gates.cnot @ np.eye(4)[2], np.eye(4)[3])
    np.testing.assert_allclose(gates.cnot @ np.eye(4)[1], np.eye(4)[1])


def test_pauli_basis() -> None:
    basis = pauli_basis()
    np.testing.assert_allclose(basis.x @ basis.x, basis.e)
    np.testing.assert_allclose(basis.x @ basis.y, 1j * basis.z)
    mats = (basis.x, basis.y, basis.z)
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            assert np.trace(a @ b) == pytest.approx(2.0 if i == j else 0.0)


def test_gellmann_standard_set() -> None:
    basis = gellmann_basis()
    assert len(basis.generators) == 8
    np.testing.assert_allclose(basis.identity, np.eye(3))
    for i, a in enumerate(basis.generators):
        assert abs(np.trace(a)) < 1e-12
        np.testing.assert_allclose(a, a.conj().T)
        for j, b in enumerate(basis.generators):
            assert np.trace(a @ b) == pytest.approx(2.0 if i == j else 0.0, abs=1e-12)


def test_gellmann_alternative_set_spans_su3() -> None:
    basis = su3_alternative()
    assert len(basis.generators) == 8
    for m in basis.generators:
        assert abs(np.trace(m)) < 1e-12
        np.testing.assert_allclose(m, m.conj().T, atol=1e-12)
    flat = np.array([m.reshape(-1) for m in basis.generators])
    assert np.linalg.matrix_rank(flat) == 8
    jx, jy, jz = basis.generators[:3]
    np.testing.assert_allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)
    assert gellmann_basis(GellMannVariant.ALTERNATIVE).generators[0].shape == (3, 3)


def test_orthogonal_observables() -> None:
    two = orthogobs(2)
    np.testing.assert_allclose(two[0], np.diag([1, 0]))
    np.testing.assert_allclose(two[1], np.diag([0, 1]))
    np.testing.assert_allclose(two[2], SIGMA_X / np.sqrt(2))
    np.testing.assert_allclose(two[3], SIGMA_Y / np.sqrt(2))
    three = orthogobs(3)
    assert len(three) == 9
    gram = np.array([[np.trace(a @ b) for b in three] for a in three])
    np.testing.assert_allclose(gram, np.eye(9), atol=1e-12)
    with pytest.raises(ParameterError):
        orthogobs(1)


def test_named_state_lookup() -> None:
    np.testing.assert_allclose(named_state("GHZ", n=3), ghzstate(3))
    np.testing.assert_allclose(named_state("dicke", n=4, param=2), dstate(2, 4))
    np.testing.assert_allclose(named_state("me", d=3), mestate(3))
    with pytest.raises(QuditError) as info:
        named_state("cat", n=2)
    assert info.value.code == "UNKNOWN_STATE"
    with pytest.raises(ParameterError):
        named_state("ghz")
