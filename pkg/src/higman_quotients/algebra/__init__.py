"""
Exact algebra: Z/p^n, free associative algebras over it, and Magnus expansions.
"""

from .zmod import Modulus, Residue, KExp
from .ncpoly import VarSet, PolyRing, Poly, Monomial, graded_key
from .grammar import format_poly, parse_poly, format_word, parse_word, parse_letters
from .magnus import IntPoly, magnus_expand, p_class
from . import words

__all__ = [
    # Z/p^n
    'Modulus', 'Residue', 'KExp',

    # Polynomials
    'VarSet', 'PolyRing', 'Poly', 'Monomial', 'graded_key',

    # Text grammars
    'format_poly', 'parse_poly', 'format_word', 'parse_word', 'parse_letters',

    # Magnus expansions
    'IntPoly', 'magnus_expand', 'p_class', 'words'
]
