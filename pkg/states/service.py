from __future__ import annotations

from typing import Any

import numpy as np

from core.models import RegisterShape
from core.paulis import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z
from core.service import binom, ensure_within_cap, mkron, nm
from errors import ParameterError, QuditError
from permute.service import reorder
from states.models import GellMannVariant, GraphSpec, PauliBasis, SU3Basis, StabilizerSet, StandardGates


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def _bits(n: int, qudit: int) -> np.ndarray:
    return (np.arange(2**n) >> (qudit - 1)) & 1


def _pauli_word(placed: dict[int, np.ndarray], n: int) -> np.ndarray:
    return mkron(*[placed.get(q, IDENTITY_2) for q in range(n, 0, -1)])


# ---------------------------------------------------------------------------
# Pure states
# ---------------------------------------------------------------------------


def ghzstate(n: int) -> np.ndarray:
    _require(n >= 1, f"GHZ state needs N >= 1, got {n}")
    ensure_within_cap(2**n)
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1.0 / np.sqrt(2.0)
    return v


def dstate(m: int, n: int) -> np.ndarray:
    """Symmetric Dicke state with ``m`` excitations."""
    _require(n >= 1, f"Dicke state needs N >= 1, got {n}")
    _require(0 <= m <= n, f"excitation number must lie in 0..{n}, got {m}")
    ensure_within_cap(2**n)
    weight = sum(_bits(n, q) for q in range(1, n + 1))
    v = np.zeros(2**n, dtype=complex)
    v[weight == m] = 1.0 / np.sqrt(binom(m, n))
    return v


def wstate(n: int) -> np.ndarray:
    _require(n >= 2, f"W state needs N >= 2, got {n}")
    return dstate(1, n)


def gstate(graph: Any) -> np.ndarray:
    """Controlled-Z on every edge applied to |+>^N."""
    g = GraphSpec.coerce(graph)
    ensure_within_cap(2**g.n)
    v = np.full(2**g.n, 1.0 / np.sqrt(2**g.n), dtype=complex)
    for a, b in g.edges():
        v = v * (1 - 2 * (_bits(g.n, a) & _bits(g.n, b)))
    return v


def gstate_stabilizer(graph: Any) -> StabilizerSet:
    g = GraphSpec.coerce(graph)
    generators = []
    for k in range(1, g.n + 1):
        placed = {k: SIGMA_X, **{j: SIGMA_Z for j in g.neighbors(k)}}
        generators.append(_pauli_word(placed, g.n))
    return StabilizerSet(generators=tuple(generators))


def cstate(n: int) -> np.ndarray:
    _require(n >= 3, f"cluster state needs N >= 3, got {n}")
    return gstate(GraphSpec.line(n))


def rstate(n: int) -> np.ndarray:
    _require(n >= 3, f"ring cluster state needs N >= 3, got {n}")
    return gstate(GraphSpec.ring(n))


def mestate(d: int) -> np.ndarray:
    _require(d >= 2, f"local dimension must be at least 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    v[np.arange(d) * (d + 1)] = 1.0 / np.sqrt(d)
    return v


def singlet(n: int) -> np.ndarray:
    if n == 2:
        v = np.zeros(4, dtype=complex)
        v[0b01], v[0b10] = 1.0, -1.0
        return v / np.sqrt(2.0)
    if n == 4:
        v = np.zeros(16, dtype=complex)
        v[[0b1100, 0b0011]] = 2.0
        v[[0b0101, 0b1010, 0b0110, 0b1001]] = -1.0
        return v / (2.0 * np.sqrt(3.0))
    raise QuditError("UNSUPPORTED_REGISTER", f"singlet is defined for N=2 and N=4 only, got {n}")


def bell_states() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Phi+, Phi-, Psi+, Psi-."""
    s = 1.0 / np.sqrt(2.0)
    return (
        np.array([s, 0, 0, s], dtype=complex),
        np.array([s, 0, 0, -s], dtype=complex),
        np.array([0, s, s, 0], dtype=complex),
        np.array([0, s, -s, 0], dtype=complex),
    )


# ---------------------------------------------------------------------------
# Mixed states
# ---------------------------------------------------------------------------


def mmstate(shape: RegisterShape) -> np.ndarray:
    ensure_within_cap(shape.total_dim)
    return np.eye(shape.total_dim, dtype=complex) / shape.total_dim


def smolinstate() -> np.ndarray:
    rho = np.zeros((16, 16), dtype=complex)
    for bell in bell_states():
        projector = np.outer(bell, bell.conj())
        rho += np.kron(projector, projector)
    return rho / 4.0


def _bound_entangled_parameter(a: float) -> float:
    a = float(a)
    _require(0.0 < a < 1.0, f"parameter must lie strictly between 0 and 1, got {a}")
    return a


def bes_horodecki3x3(a: float) -> np.ndarray:
    a = _bound_entangled_parameter(a)
    rho = np.diag([a, a, a, a, a, a, (1 + a) / 2, a, (1 + a) / 2]).astype(complex)
    for i, j in ((0, 4), (0, 8), (4, 8)):
        rho[i, j] = rho[j, i] = a
    rho[6, 8] = rho[8, 6] = np.sqrt(1 - a * a) / 2
    return rho / (8 * a + 1)


def bes_horodecki4x2(b: float) -> np.ndarray:
    """2x4 family with the qubit party moved to qubit 1 of a 3-qubit register."""
    b = _bound_entangled_parameter(b)
    rho = np.diag([b, b, b, b, (1 + b) / 2, b, b, (1 + b) / 2]).astype(complex)
    for i in range(3):
        rho[i, i + 5] = rho[i + 5, i] = b
    rho[4, 7] = rho[7, 4] = np.sqrt(1 - b * b) / 2
    # qubit party is the most significant factor above
    return reorder(rho / (7 * b + 1), [2, 1, 3])


def upb_tiles() -> tuple[np.ndarray, ...]:
    e = np.eye(3, dtype=complex)
    s = 1.0 / np.sqrt(2.0)
    uniform = (e[0] + e[1] + e[2]) / np.sqrt(3.0)
    return (
        np.kron(e[0], s * (e[0] - e[1])),
        np.kron(s * (e[0] - e[1]), e[2]),
        np.kron(e[2], s * (e[1] - e[2])),
        np.kron(s * (e[1] - e[2]), e[0]),
        np.kron(uniform, uniform),
    )


def bes_upb3x3() -> np.ndarray:
    rho = np.eye(9, dtype=complex)
    for vec in upb_tiles():
        rho -= np.outer(vec, vec.conj())
    return rho / 4.0


# ---------------------------------------------------------------------------
# Gates and operator bases
# ---------------------------------------------------------------------------


def standard_gates() -> StandardGates:
    """CNOT with qubit 2 as control and qubit 1 as target; Hadamard."""
    cnot = np.eye(4, dtype=complex)[[0, 1, 3, 2]]
    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
    return StandardGates(cnot=cnot, hadamard=hadamard)


def pauli_basis() -> PauliBasis:
    return PauliBasis(x=SIGMA_X.copy(), y=SIGMA_Y.copy(), z=SIGMA_Z.copy(), e=IDENTITY_2.copy())


def _gellmann_standard() -> tuple[np.ndarray, ...]:
    mats = []
    for k, l in ((0, 1), (0, 2), (1, 2)):
        sym = np.zeros((3, 3), dtype=complex)
        sym[k, l] = sym[l, k] = 1.0
        asym = np.zeros((3, 3), dtype=complex)
        asym[k, l], asym[l, k] = -1j, 1j
        mats.append((sym, asym))
    (m1, m2), (m4, m5), (m6, m7) = mats
    m3 = np.diag([1, -1, 0]).astype(complex)
    m8 = np.diag([1, 1, -2]).astype(complex) / np.sqrt(3.0)
    return (m1, m2, m3, m4, m5, m6, m7, m8)


def _gellmann_alternative() -> tuple[np.ndarray, ...]:
    # spin-1 operators and their quadrupole combinations
    s = 1.0 / np.sqrt(2.0)
    jx = s * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
    jy = s * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex)
    jz = np.diag([1, 0, -1]).astype(complex)
    qxy = jx @ jy + jy @ jx
    qyz = jy @ jz + jz @ jy
    qxz = jx @ jz + jz @ jx
    dxy = jx @ jx - jy @ jy
    y = np.sqrt(3.0) * (jz @ jz) - (2.0 / np.sqrt(3.0)) * np.eye(3, dtype=complex)
    return (jx, jy, jz, qxy, qyz, qxz, dxy, y)


def gellmann_basis(variant: GellMannVariant | str = GellMannVariant.STANDARD) -> SU3Basis:
    if GellMannVariant(variant) == GellMannVariant.ALTERNATIVE:
        generators = _gellmann_alternative()
    else:
        generators = _gellmann_standard()
    return SU3Basis(generators=generators, identity=np.eye(3, dtype=complex))


def su3_alternative() -> SU3Basis:
    return gellmann_basis(GellMannVariant.ALTERNATIVE)


def orthogobs(d: int) -> list[np.ndarray]:
    """Hilbert-Schmidt orthonormal observables: projectors, then symmetric, then antisymmetric pairs."""
    _require(d >= 2, f"local dimension must be at least 2, got {d}")
    basis = np.eye(d, dtype=complex)
    pairs = [(k, l) for k in range(d) for l in range(k + 1, d)]
    out = [np.outer(basis[k], basis[k]) for k in range(d)]
    for k, l in pairs:
        out.append((np.outer(basis[k], basis[l]) + np.outer(basis[l], basis[k])) / np.sqrt(2.0))
    for k, l in pairs:
        out.append((np.outer(basis[k], basis[l]) - np.outer(basis[l], basis[k])) / (np.sqrt(2.0) * 1j))
    return out


def named_state(name: str, n: int | None = None, d: int = 2, param: float | None = None) -> Any:
    """State lookup used by the command line."""
    key = str(name or "").strip().lower()
    builders = {
        "ghz": lambda: ghzstate(_need(n, key)),
        "w": lambda: wstate(_need(n, key)),
        "cluster": lambda: cstate(_need(n, key)),
        "ring": lambda: rstate(_need(n, key)),
        "dicke": lambda: dstate(int(_need(param, key)), _need(n, key)),
        "mm": lambda: mmstate(RegisterShape(n_qudits=_need(n, key), dim=d)),
        "me": lambda: mestate(d),
        "singlet": lambda: singlet(_need(n, key)),
        "smolin": smolinstate,
        "horodecki3x3": lambda: bes_horodecki3x3(_need(param, key)),
        "horodecki4x2": lambda: bes_horodecki4x2(_need(param, key)),
        "upb3x3": bes_upb3x3,
    }
    if key not in builders:
        raise QuditError("UNKNOWN_STATE", f"unknown state {name!r}; choose from {sorted(builders)}")
    return nm(builders[key]())


def _need(value: Any, name: str) -> Any:
    if value is None:
        raise ParameterError(f"state {name!r} needs an additional parameter")
    return value
