"""The free associative algebra Z_{p^n}[x_0, ..., x_{m}].

Monomials are tuples of variable indices (the empty tuple is the monomial 1);
a polynomial is a sparse map monomial -> coefficient in [0, p^n) with no zero
coefficients stored.
"""

import random
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..exceptions import ContextMismatch, NotInvertibleForm
from .zmod import Modulus, Residue

Monomial = Tuple[int, ...]
Letter = Tuple[int, int]            # (generator index, integer exponent)
GroupWord = Sequence[Letter]

ONE: Monomial = ()


def graded_key(monomial: Monomial) -> Tuple[int, Monomial]:
    """Degree first, then lexicographic on letter indices."""
    return (len(monomial), monomial)


@dataclass(frozen=True)
class VarSet:
    """Variables x_0 .. x_{count-1}."""

    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"variable count must be >= 1, got {self.count}")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(f"x{i}" for i in range(self.count))

    def check(self, index: int) -> int:
        if not 0 <= index < self.count:
            raise IndexError(f"variable index {index} out of range [0, {self.count})")
        return index


@dataclass(frozen=True)
class PolyRing:
    """Z_{p^n}[x_0, ..., x_{count-1}] with non-commuting variables."""

    modulus: Modulus
    varset: VarSet

    @classmethod
    def create(cls, modulus: Modulus, count: int) -> 'PolyRing':
        return cls(modulus, VarSet(count))

    @property
    def pn(self) -> int:
        return self.modulus.pn

    @property
    def nvars(self) -> int:
        return self.varset.count

    def __str__(self) -> str:
        return f"Z_{self.modulus}[{','.join(self.varset.names)}]"

    def poly(self, terms: Mapping[Monomial, int]) -> 'Poly':
        for monomial in terms:
            for letter in monomial:
                self.varset.check(letter)
        return Poly(self, terms)

    def zero(self) -> 'Poly':
        return Poly(self, {})

    def one(self) -> 'Poly':
        return self.const(1)

    def const(self, c: int) -> 'Poly':
        return Poly(self, {ONE: int(c)})

    def var(self, i: int) -> 'Poly':
        return Poly(self, {(self.varset.check(i),): 1})

    def monomial(self, word: Iterable[int], coeff: int = 1) -> 'Poly':
        word = tuple(self.varset.check(i) for i in word)
        return Poly(self, {word: int(coeff)})

    def gen_unit(self, i: int) -> 'Poly':
        """The unit 1 + p*x_i."""
        self.varset.check(i)
        return Poly(self, {ONE: 1, (i,): self.modulus.p})

    def word_expand(self, word: GroupWord) -> 'Poly':
        """Image of a group word under a_i -> 1 + p*x_i.

        Negative exponents go through unit_inverse rather than through the
        residue exponent -e.
        """
        result = self.one()
        for gen, exponent in word:
            unit = self.gen_unit(gen)
            if exponent < 0:
                unit = unit.unit_inverse()
                exponent = -exponent
            result = result * unit.unit_pow(exponent)
        return result


class Poly:
    """An immutable element of a PolyRing."""

    __slots__ = ('ring', 'terms', '_hash')

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int], _reduced: bool = False):
        self.ring = ring
        if _reduced:
            self.terms: Dict[Monomial, int] = dict(terms)
        else:
            pn = ring.pn
            reduced = {}
            for monomial, coeff in terms.items():
                c = int(coeff) % pn
                if c:
                    reduced[tuple(monomial)] = c
            self.terms = reduced
        self._hash: Optional[int] = None

    @classmethod
    def from_accumulator(cls, ring: PolyRing, acc: Mapping[Monomial, int]) -> 'Poly':
        return cls(ring, acc)

    def _check(self, other: 'Poly') -> None:
        if self.ring != other.ring:
            raise ContextMismatch(f"cannot combine polynomials over {self.ring} and {other.ring}")

    def _lift(self, other: Union['Poly', Residue, int]) -> 'Poly':
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, Residue):
            if other.modulus != self.ring.modulus:
                raise ContextMismatch(f"residue mod {other.modulus} in ring {self.ring}")
            return self.ring.const(other.value)
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for monomial, coeff in other.terms.items():
            acc[monomial] = acc.get(monomial, 0) + coeff
        return Poly(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for monomial, coeff in other.terms.items():
            acc[monomial] = acc.get(monomial, 0) - coeff
        return Poly(self.ring, acc)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Residue)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        acc: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                acc[m] = acc.get(m, 0) + c1 * c2
        return Poly(self.ring, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Residue)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Union[int, Residue]) -> 'Poly':
        if isinstance(c, Residue):
            if c.modulus != self.ring.modulus:
                raise ContextMismatch(f"residue mod {c.modulus} in ring {self.ring}")
            c = c.value
        return Poly(self.ring, {m: coeff * c for m, coeff in self.terms.items()})

    def __pow__(self, e: int) -> 'Poly':
        if e < 0:
            return self.unit_inverse() ** (-e)
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- unit group --------------------------------------------------------

    def is_unit_form(self) -> bool:
        """True when self = 1 + p*q: constant 1, other coefficients divisible by p."""
        if self.terms.get(ONE) != 1 % self.ring.pn:
            return False
        p = self.ring.modulus.p
        return all(c % p == 0 for m, c in self.terms.items() if m)

    def _require_unit_form(self) -> None:
        if not self.is_unit_form():
            raise NotInvertibleForm(f"{self!r} is not of the form 1 + p*q")

    def unit_inverse(self) -> 'Poly':
        """Two-sided inverse sum_{j<n} (-(u-1))^j of u = 1 + p*q."""
        self._require_unit_form()
        z = self - 1
        minus_z = -z
        result = self.ring.one()
        power = self.ring.one()
        for _ in range(1, self.ring.modulus.n):
            power = power * minus_z
            if power.is_zero():
                break
            result = result + power
        return result

    def unit_pow(self, e: Union[int, Residue]) -> 'Poly':
        """u^e for any representative of e mod p^n; u^(p^n) = 1."""
        self._require_unit_form()
        return self ** (int(e) % self.ring.pn)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {ONE: 1 % self.ring.pn}

    def coeff(self, monomial: Monomial) -> int:
        return self.terms.get(tuple(monomial), 0)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def monomials(self) -> List[Monomial]:
        """Monomials in printing order (plain lexicographic, constant first)."""
        return sorted(self.terms)

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        for monomial in sorted(self.terms):
            yield monomial, self.terms[monomial]

    def leading_monomial(self) -> Optional[Monomial]:
        """Largest monomial under the graded order."""
        if not self.terms:
            return None
        return max(self.terms, key=graded_key)

    def substitute(self, mapping: Sequence[int], ring: Optional[PolyRing] = None) -> 'Poly':
        """Rename variables: x_i -> x_{mapping[i]}."""
        target = ring or self.ring
        return target.poly({tuple(mapping[i] for i in m): c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self) -> str:
        from .grammar import format_poly
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __getstate__(self):
        return {'ring': self.ring, 'terms': self.terms}

    def __setstate__(self, state):
        self.ring = state['ring']
        self.terms = state['terms']
        self._hash = None


def random_monomial(ring: PolyRing, rng: random.Random, max_degree: int = 3) -> Monomial:
    degree = rng.randint(0, max_degree)
    return tuple(rng.randrange(ring.nvars) for _ in range(degree))


def random_poly(ring: PolyRing, rng: random.Random, nterms: int = 4, max_degree: int = 3) -> Poly:
    acc: Dict[Monomial, int] = {}
    for _ in range(nterms):
        m = random_monomial(ring, rng, max_degree)
        acc[m] = acc.get(m, 0) + rng.randrange(ring.pn)
    return Poly(ring, acc)


def random_unit(ring: PolyRing, rng: random.Random, nterms: int = 4, max_degree: int = 3) -> Poly:
    """1 + p*q with q random and free of constant term."""
    q = random_poly(ring, rng, nterms, max_degree)
    q = q - q.coeff(ONE)
    return ring.one() + q.scale(ring.modulus.p)
