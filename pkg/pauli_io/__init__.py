from .models import PAULI_LETTERS, PauliPolynomial, PauliTerm
from .parser import parse_pauli
from .service import decompose, pauli_coefficients, paulistr, polynomial_to_operator, printv

__all__ = [
    "PAULI_LETTERS",
    "PauliPolynomial",
    "PauliTerm",
    "decompose",
    "parse_pauli",
    "pauli_coefficients",
    "paulistr",
    "polynomial_to_operator",
    "printv",
]
