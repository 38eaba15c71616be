from __future__ import annotations

from typing import Any

import numpy as np

from config import DECOMPOSE_THRESHOLD, PRINTV_THRESHOLD
from core.paulis import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z
from core.service import as_operator, as_vector, ensure_within_cap, mkron, register_size, side, to_dense
from errors import QuditError
from pauli_io.models import PauliPolynomial
from pauli_io.parser import parse_pauli

_LETTER_MATRICES = {"e": IDENTITY_2, "x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}
_DECOMPOSE_LETTERS = "1xyz"

# row a, column 2r + c holds sigma_a[c, r] / 2
_PAULI_TRANSFORM = np.array(
    [[m[c, r] / 2.0 for r in range(2) for c in range(2)] for m in (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z)],
    dtype=complex,
)


# ---------------------------------------------------------------------------
# printv
# ---------------------------------------------------------------------------


def _format_amplitude(amp: complex) -> str:
    # rounding residue relative to the magnitude is dropped, nothing else
    noise = 1e-12 * abs(amp)
    re = amp.real if abs(amp.real) > noise else 0.0
    im = amp.imag if abs(amp.imag) > noise else 0.0
    if im == 0.0:
        return f"{re:.5g}" if re > 0 else f"({re:.5g})"
    sign = "+" if im > 0 else "-"
    return f"({re:.5g}{sign}{abs(im):.5g}i)"


def printv(v: Any, threshold: float = PRINTV_THRESHOLD, d: int = 2) -> str:
    """Ket-string rendering of a qubit state vector, most significant qubit first."""
    if d != 2:
        raise QuditError("UNSUPPORTED_REGISTER", "printv supports qubit registers only")
    vec = as_vector(v)
    n = register_size(vec.size, 2)
    parts = []
    for index in np.flatnonzero(np.abs(vec) >= threshold):
        bits = format(int(index), f"0{n}b") if n else ""
        parts.append(f"{_format_amplitude(complex(vec[index]))}|{bits}>")
    return "+".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------


def pauli_coefficients(m: Any) -> np.ndarray:
    """Tensor of Tr(m W) / 2^N indexed by letters (1, x, y, z), most significant qubit first."""
    m = to_dense(as_operator(m))
    n = register_size(side(m), 2)
    if n == 0:
        return m.reshape(())
    t = m.reshape((2,) * (2 * n))
    interleaved = [axis for q in range(n) for axis in (q, q + n)]
    t = np.transpose(t, interleaved).reshape((4,) * n)
    for axis in range(n):
        t = np.moveaxis(np.tensordot(_PAULI_TRANSFORM, t, axes=([1], [axis])), 0, axis)
    return t


def _format_number(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _format_coefficient(c: complex, threshold: float) -> tuple[str, str]:
    """Sign and magnitude text; an empty magnitude means a unit coefficient."""
    if abs(c.imag) < threshold:
        value = c.real
        sign = "-" if value < 0 else "+"
        magnitude = abs(value)
        return sign, "" if magnitude == 1.0 else _format_number(magnitude)
    if abs(c.real) < threshold:
        sign = "-" if c.imag < 0 else "+"
        return sign, f"{_format_number(abs(c.imag))}i"
    im_sign = "+" if c.imag > 0 else "-"
    return "+", f"({_format_number(c.real)}{im_sign}{_format_number(abs(c.imag))}i)"


def _latex_word(word: str) -> str:
    n = len(word)
    factors = [rf"\sigma_{{{letter}}}^{{({n - pos})}}" for pos, letter in enumerate(word) if letter != "1"]
    return "".join(factors) if factors else r"\mathbb{1}"


def decompose(m: Any, latex: bool = False, threshold: float = DECOMPOSE_THRESHOLD, identity_letter: str = "1") -> str:
    coefficients = pauli_coefficients(m)
    n = coefficients.ndim
    flat = coefficients.reshape(-1)
    parts: list[str] = []
    for index in np.flatnonzero(np.abs(flat) >= threshold):
        digits = np.base_repr(int(index), base=4).rjust(n, "0") if n else ""
        word = "".join(_DECOMPOSE_LETTERS[int(ch)] for ch in digits)
        sign, magnitude = _format_coefficient(complex(flat[index]), threshold)
        if latex:
            body = f"{magnitude}{_latex_word(word)}"
        else:
            rendered = word.replace("1", identity_letter)
            body = f"{magnitude}*{rendered}" if magnitude else rendered
        if parts or sign == "-":
            parts.append(sign)
        parts.append(body)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# paulistr
# ---------------------------------------------------------------------------


def polynomial_to_operator(poly: PauliPolynomial) -> np.ndarray:
    n = poly.n_qubits
    ensure_within_cap(2**n)
    total = np.zeros((2**n, 2**n), dtype=complex)
    for term in poly.terms:
        total = total + term.coefficient * mkron(*[_LETTER_MATRICES[letter] for letter in term.letters])
    return total


def paulistr(s: str) -> np.ndarray:
    return polynomial_to_operator(parse_pauli(s))
