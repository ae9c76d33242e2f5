"""Exact arithmetic in Z/p^n and the k-exponential r -> k^r."""

from dataclasses import dataclass, field
from typing import Union

from sympy import isprime, mod_inverse, multiplicity, n_order

from ..exceptions import ConfigError, ModulusMismatch, NotAUnit


@dataclass(frozen=True)
class Modulus:
    """The modulus p^n with p prime and n >= 1."""

    p: int
    n: int
    pn: int = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise ConfigError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, 'pn', self.p ** self.n)

    def __str__(self) -> str:
        return f"{self.p}^{self.n}"

    def residue(self, value: int) -> 'Residue':
        return Residue(value, self)

    def valuation(self, value: int) -> int:
        """Largest e <= n with p^e | value; zero has valuation n."""
        value %= self.pn
        if value == 0:
            return self.n
        return int(multiplicity(self.p, value))


Operand = Union['Residue', int]


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^n stored canonically in [0, p^n)."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        object.__setattr__(self, 'value', int(self.value) % self.modulus.pn)

    def _coerce(self, other: Operand) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"cannot combine residues mod {self.modulus} and mod {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other: Operand) -> 'Residue':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return Residue(self.value + value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> 'Residue':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return Residue(self.value - value, self.modulus)

    def __rsub__(self, other: Operand) -> 'Residue':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return Residue(value - self.value, self.modulus)

    def __mul__(self, other: Operand) -> 'Residue':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return Residue(self.value * value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> 'Residue':
        return Residue(-self.value, self.modulus)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return str(self.value)

    def is_unit(self) -> bool:
        return self.value % self.modulus.p != 0

    def inverse(self) -> 'Residue':
        if not self.is_unit():
            raise NotAUnit(f"{self.value} is not a unit mod {self.modulus}")
        return Residue(mod_inverse(self.value, self.modulus.pn), self.modulus)

    def vp(self) -> int:
        """p-adic valuation in [0, n]; vp(0) = n."""
        return self.modulus.valuation(self.value)


@dataclass(frozen=True)
class KExp:
    """The map r -> k^r on Z/p^n, defined because p | k - 1."""

    k: int
    modulus: Modulus
    order: int = field(init=False, compare=False)

    def __post_init__(self):
        p = self.modulus.p
        if not isinstance(self.k, int) or self.k < 2:
            raise ConfigError(f"k must be an integer >= 2, got {self.k!r}")
        if (self.k - 1) % p != 0:
            raise ConfigError(f"p={p} must divide k-1={self.k - 1}")
        object.__setattr__(self, 'order', n_order(self.k % self.modulus.pn, self.modulus.pn))

    def __call__(self, r: Operand) -> Residue:
        return self.kpow(r)

    def kpow(self, r: Operand) -> Residue:
        """k^r mod p^n; only r mod order(k) matters."""
        exponent = int(r) % self.order
        return Residue(pow(self.k, exponent, self.modulus.pn), self.modulus)

    def kpow_inverse(self, r: Operand) -> Residue:
        """k^(-r) mod p^n."""
        return self.kpow(-int(r))

    def korder(self) -> int:
        return self.order
