from __future__ import annotations

from dataclasses import dataclass, field

from errors import QuditError

PAULI_LETTERS = "exyz"


@dataclass(frozen=True)
class PauliTerm:
    """Weighted Pauli word; letters run from the most significant qubit down, 'e' is the identity."""

    coefficient: complex
    letters: str

    def __post_init__(self) -> None:
        if not self.letters:
            raise QuditError("PAULI_SYNTAX_ERROR", "Pauli word must contain at least one letter")
        bad = sorted(set(self.letters) - set(PAULI_LETTERS))
        if bad:
            raise QuditError("PAULI_SYNTAX_ERROR", f"unknown Pauli letters {bad}")


@dataclass(frozen=True)
class PauliPolynomial:
    terms: tuple[PauliTerm, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        lengths = {len(term.letters) for term in self.terms}
        if len(lengths) > 1:
            raise QuditError("PAULI_LENGTH_MISMATCH", f"Pauli words have different lengths {sorted(lengths)}")
        words = [term.letters for term in self.terms]
        if len(set(words)) != len(words):
            raise QuditError("PAULI_SYNTAX_ERROR", "duplicate Pauli words; merge them first")

    @property
    def n_qubits(self) -> int:
        return len(self.terms[0].letters) if self.terms else 0

    @classmethod
    def merged(cls, terms: list[PauliTerm]) -> "PauliPolynomial":
        """Combine equal words, keeping first-seen order."""
        lengths = {len(term.letters) for term in terms}
        if len(lengths) > 1:
            raise QuditError("PAULI_LENGTH_MISMATCH", f"Pauli words have different lengths {sorted(lengths)}")
        totals: dict[str, complex] = {}
        for term in terms:
            totals[term.letters] = totals.get(term.letters, 0j) + complex(term.coefficient)
        return cls(terms=tuple(PauliTerm(coefficient=c, letters=w) for w, c in totals.items()))
