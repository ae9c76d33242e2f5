"""Text grammars for polynomials and group words.

Polynomials::

    poly := term (('+'|'-') term)*
    term := coeff ('*' mono)? | mono
    mono := var ('.' var)*
    var  := "x0" | "x1" | ...

Words::

    word := item (',' item)* | "1" | ""
    item := atom ('^' int)?
    atom := "a" digit+ | '[' item ',' item ']' | '(' word ')'

Whitespace is ignored everywhere.
"""

import re
from typing import List, Sequence, Tuple

from ..exceptions import ParseError
from .ncpoly import Monomial, Poly, PolyRing
from .words import Letter, Word, commutator, free_reduce, power

_TERM = re.compile(r'^(?:(\d+)(?:\*(.+))?|(.+))$')
_VAR = re.compile(r'^x(\d+)$')


def format_monomial(monomial: Monomial) -> str:
    return '.'.join(f"x{i}" for i in monomial)


def format_poly(f: Poly) -> str:
    """Terms in lexicographic monomial order, constant first; "0" for zero."""
    if f.is_zero():
        return "0"
    parts = []
    for monomial, coeff in f.items():
        if not monomial:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append(format_monomial(monomial))
        else:
            parts.append(f"{coeff}*{format_monomial(monomial)}")
    return ' + '.join(parts)


def _parse_monomial(text: str, ring: PolyRing) -> Monomial:
    letters = []
    for var in text.split('.'):
        match = _VAR.match(var)
        if not match:
            raise ParseError(f"bad variable {var!r}")
        index = int(match.group(1))
        if index >= ring.nvars:
            raise ParseError(f"variable {var} outside {ring}")
        letters.append(index)
    return tuple(letters)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    compact = re.sub(r'\s+', '', text)
    if not compact:
        raise ParseError("empty polynomial")
    # split into signed terms; a leading sign is allowed
    pieces = re.findall(r'[+-]?[^+-]+', compact)
    if ''.join(pieces) != compact:
        raise ParseError(f"cannot parse polynomial {text!r}")
    acc = {}
    for piece in pieces:
        sign = -1 if piece[0] == '-' else 1
        body = piece.lstrip('+-')
        match = _TERM.match(body)
        if not match or not body:
            raise ParseError(f"bad term {piece!r}")
        coeff_text, mono_text, bare_mono = match.groups()
        if coeff_text is not None:
            coeff = int(coeff_text)
            monomial = _parse_monomial(mono_text, ring) if mono_text else ()
        else:
            coeff = 1
            monomial = _parse_monomial(bare_mono, ring)
        acc[monomial] = acc.get(monomial, 0) + sign * coeff
    return Poly(ring, acc)


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    return ', '.join(f"a{gen}^{exp}" for gen, exp in word)


class _WordParser:
    """Recursive-descent parser over a whitespace-free string."""

    def __init__(self, text: str, ngens: int):
        self.text = text
        self.pos = 0
        self.ngens = ngens

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise ParseError(f"expected {char!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def integer(self) -> int:
        match = re.compile(r'-?\d+').match(self.text, self.pos)
        if not match:
            raise ParseError(f"expected an integer at position {self.pos} in {self.text!r}")
        self.pos = match.end()
        return int(match.group())

    def word(self) -> Word:
        items: List[Letter] = list(self.item())
        while self.peek() == ',':
            self.pos += 1
            items.extend(self.item())
        return items

    def item(self) -> Word:
        base = self.atom()
        if self.peek() == '^':
            self.pos += 1
            return power(base, self.integer())
        return base

    def atom(self) -> Word:
        char = self.peek()
        if char == 'a':
            self.pos += 1
            match = re.compile(r'\d+').match(self.text, self.pos)
            if not match:
                raise ParseError(f"expected generator index at position {self.pos}")
            self.pos = match.end()
            gen = int(match.group())
            if gen >= self.ngens:
                raise ParseError(f"generator a{gen} out of range [0, {self.ngens})")
            return [(gen, 1)]
        if char == '[':
            self.pos += 1
            left = self.item()
            self.expect(',')
            right = self.item()
            self.expect(']')
            return commutator(left, right)
        if char == '(':
            self.pos += 1
            inner = self.word()
            self.expect(')')
            return inner
        raise ParseError(f"unexpected {char or 'end of input'!r} at position {self.pos} in {self.text!r}")


def parse_word(text: str, ngens: int = 4, reduce: bool = False) -> Word:
    """Parse a group word; ``reduce`` applies free reduction to the result."""
    compact = re.sub(r'\s+', '', text)
    if compact in ('', '1'):
        return []
    parser = _WordParser(compact, ngens)
    word = parser.word()
    if parser.pos != len(compact):
        raise ParseError(f"trailing input at position {parser.pos} in {text!r}")
    return free_reduce(word) if reduce else word


def parse_letters(text: str, ngens: int = 4) -> List[Tuple[int, int]]:
    """Parse a flat comma-separated list of a<i>^<e> tokens, no brackets."""
    compact = re.sub(r'\s+', '', text)
    if compact in ('', '1'):
        return []
    letters = []
    for token in compact.split(','):
        match = re.fullmatch(r'a(\d+)(?:\^(-?\d+))?', token)
        if not match:
            raise ParseError(f"bad letter {token!r}")
        gen = int(match.group(1))
        if gen >= ngens:
            raise ParseError(f"generator a{gen} out of range [0, {ngens})")
        letters.append((gen, int(match.group(2) or 1)))
    return letters
