"""Truncated Magnus expansions over exact integers and the p-class of a word.

A free-group word is expanded under a_i -> 1 + s*x_i with inverses
a_i^-1 -> sum_j (-s*x_i)^j, keeping monomials of degree <= D.  With s = 1 this
is the classical Magnus map; with s = p it is the image in Z[p x] that detects
the p-central series.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from sympy import multiplicity

from ..utils.logging_config import get_logger
from .grammar import format_monomial
from .ncpoly import Monomial, ONE
from .words import Letter

logger = get_logger(__name__)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in non-commuting variables, truncated above degree D."""

    D: int
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.D < 0:
            raise ValueError(f"degree cap must be >= 0, got {self.D}")
        clean = {tuple(m): int(c) for m, c in self.terms.items() if c and len(m) <= self.D}
        object.__setattr__(self, 'terms', clean)

    @classmethod
    def one(cls, D: int) -> 'IntPoly':
        return cls(D, {ONE: 1})

    @classmethod
    def var(cls, D: int, i: int, scale: int = 1) -> 'IntPoly':
        return cls(D, {(i,): scale})

    def __add__(self, other: 'IntPoly') -> 'IntPoly':
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return IntPoly(min(self.D, other.D), acc)

    def __sub__(self, other: 'IntPoly') -> 'IntPoly':
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) - c
        return IntPoly(min(self.D, other.D), acc)

    def __neg__(self) -> 'IntPoly':
        return IntPoly(self.D, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: 'IntPoly') -> 'IntPoly':
        D = min(self.D, other.D)
        acc: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            if len(m1) > D:
                continue
            for m2, c2 in other.terms.items():
                if len(m1) + len(m2) > D:
                    continue
                m = m1 + m2
                acc[m] = acc.get(m, 0) + c1 * c2
        return IntPoly(D, acc)

    def scale(self, c: int) -> 'IntPoly':
        return IntPoly(self.D, {m: c * v for m, v in self.terms.items()})

    def coeff(self, monomial: Monomial) -> int:
        return self.terms.get(tuple(monomial), 0)

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        for m in sorted(self.terms, key=lambda w: (len(w), w)):
            yield m, self.terms[m]

    def homogeneous(self, d: int) -> 'IntPoly':
        return IntPoly(self.D, {m: c for m, c in self.terms.items() if len(m) == d})

    def augmentation(self) -> 'IntPoly':
        """self - (constant term)."""
        return IntPoly(self.D, {m: c for m, c in self.terms.items() if m})

    def lowest_degree(self) -> Optional[int]:
        """Smallest degree >= 1 carrying a nonzero coefficient."""
        degrees = [len(m) for m in self.terms if m]
        return min(degrees) if degrees else None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.items():
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if not m:
                body = str(mag)
            elif mag == 1:
                body = format_monomial(m)
            else:
                body = f"{mag}*{format_monomial(m)}"
            out.append((sign, body))
        first_sign, first_body = out[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


def _letter_expansion(gen: int, exp: int, D: int, scale: int) -> IntPoly:
    base = IntPoly.var(D, gen, scale)
    if exp >= 0:
        unit = IntPoly.one(D) + base
    else:
        # geometric series for (1 + s*x)^-1, exact up to degree D
        unit = IntPoly.one(D)
        term = IntPoly.one(D)
        minus = -base
        for _ in range(D):
            term = term * minus
            unit = unit + term
        exp = -exp
    result = IntPoly.one(D)
    for _ in range(exp):
        result = result * unit
    return result


def magnus_expand(word: Sequence[Letter], D: int, scale: int = 1) -> IntPoly:
    """Expansion of ``word`` under a_i -> 1 + scale*x_i, truncated above degree D."""
    if D < 1:
        raise ValueError(f"degree cap must be >= 1, got {D}")
    result = IntPoly.one(D)
    for gen, exp in word:
        if exp:
            result = result * _letter_expansion(gen, exp, D, scale)
    return result


def in_pcentral_term(expansion: IntPoly, p: int, n: int) -> bool:
    """Membership test for the n-th term given the scale-p expansion.

    Every coefficient of (w - 1) on monomials of degree < n must be divisible
    by p^n; higher-degree monomials are divisible automatically.
    """
    pn = p ** n
    return all(c % pn == 0 for m, c in expansion.terms.items() if m and len(m) < n)


def p_class(word: Sequence[Letter], p: int, nmax: int = 6) -> int:
    """Largest n <= nmax with the word in the n-th term of the p-central series."""
    if nmax < 1:
        raise ValueError(f"nmax must be >= 1, got {nmax}")
    expansion = magnus_expand(word, max(nmax - 1, 1), scale=p)
    n = 1
    while n < nmax and in_pcentral_term(expansion, p, n + 1):
        n += 1
    logger.debug(f"p_class at p={p}: {n} (cap {nmax})")
    return n


def lowest_valuation(expansion: IntPoly, p: int) -> Dict[int, int]:
    """Per degree d >= 1, the minimal p-adic valuation among degree-d coefficients."""
    out: Dict[int, int] = {}
    for m, c in expansion.terms.items():
        if not m:
            continue
        v = multiplicity(p, c)
        d = len(m)
        out[d] = min(out.get(d, v), v)
    return out
