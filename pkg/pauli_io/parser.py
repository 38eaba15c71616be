"""Recursive-descent parser for Pauli-string expressions.

Grammar (whitespace ignored everywhere)::

    expr   := [sign] term (sign term)*
    term   := [number '*'] word
    word   := ('x' | 'y' | 'z' | 'e')+
    number := [sign] digits ['.' digits] [('e' | 'E') [sign] digits]
"""

from __future__ import annotations

import math
import re

from core.policy import current_policy
from errors import PauliSyntaxError
from pauli_io.models import PAULI_LETTERS, PauliPolynomial, PauliTerm

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


class _Parser:
    def __init__(self, text: str) -> None:
        self.original = text
        kept = [(ch, idx) for idx, ch in enumerate(text) if not ch.isspace()]
        self.chars = "".join(ch for ch, _ in kept)
        self.offsets = [idx for _, idx in kept]
        self.pos = 0

    def _where(self, pos: int | None = None) -> int:
        pos = self.pos if pos is None else pos
        return self.offsets[pos] if pos < len(self.offsets) else len(self.original)

    def _fail(self, message: str, pos: int | None = None) -> PauliSyntaxError:
        return PauliSyntaxError(message, self._where(pos))

    def _peek(self) -> str:
        return self.chars[self.pos] if self.pos < len(self.chars) else ""

    def parse(self) -> PauliPolynomial:
        if not self.chars:
            raise self._fail("empty expression")
        sign = 1.0
        if self._peek() in ("+", "-"):
            sign = -1.0 if self._peek() == "-" else 1.0
            self.pos += 1
        terms = [self._term(sign)]
        while self.pos < len(self.chars):
            ch = self._peek()
            if ch not in ("+", "-"):
                raise self._fail(f"expected '+' or '-', found {ch!r}")
            self.pos += 1
            terms.append(self._term(-1.0 if ch == "-" else 1.0))
        return PauliPolynomial.merged(terms)

    def _term(self, sign: float) -> PauliTerm:
        start = self.pos
        coefficient = 1.0
        ch = self._peek()
        if ch.isdigit() or ch in (".", "+", "-"):
            match = _NUMBER.match(self.chars, self.pos)
            if not match:
                raise self._fail("malformed number")
            coefficient = float(match.group(0))
            if not math.isfinite(coefficient):
                raise self._fail("coefficient is not finite", start)
            self.pos = match.end()
            if self._peek() != "*":
                raise self._fail("expected '*' after coefficient")
            self.pos += 1
        word_start = self.pos
        while self._peek() and self._peek() in PAULI_LETTERS:
            self.pos += 1
        if self.pos == word_start:
            found = self._peek()
            raise self._fail(f"expected a Pauli word, found {found!r}" if found else "expected a Pauli word")
        letters = self.chars[word_start : self.pos]
        if 2 ** len(letters) > current_policy().dense_max_dim:
            raise self._fail(f"Pauli word of {len(letters)} qubits exceeds the dense size cap", word_start)
        return PauliTerm(coefficient=complex(sign * coefficient), letters=letters)


def parse_pauli(text: str) -> PauliPolynomial:
    if not isinstance(text, str):
        raise PauliSyntaxError("expression must be a string", 0)
    return _Parser(text).parse()
