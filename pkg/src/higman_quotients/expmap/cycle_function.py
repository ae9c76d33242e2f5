"""Tables f : Z/N -> Z/N (N a prime power) and their verification.

The quantities checked are bijectivity, f∘f∘f∘f = id, the number of x with
f(x + 1) = k*f(x) (x + 1 taken mod N), and the breakpoints of
a(x) = f(x) * k^(-x).
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from sympy import factorint, mod_inverse

from ..exceptions import ConfigError


def split_prime_power(N: int) -> Tuple[int, int]:
    """N = p^m; returns (p, m), with (1, 0) for N = 1."""
    if N < 1:
        raise ConfigError(f"modulus must be >= 1, got {N}")
    if N == 1:
        return 1, 0
    factors = factorint(N)
    if len(factors) != 1:
        raise ConfigError(f"modulus {N} is not a prime power")
    (p, m), = factors.items()
    return int(p), int(m)


def check_multiplier(N: int, k: int) -> None:
    p, _ = split_prime_power(N)
    if N > 1 and (k - 1) % p:
        raise ConfigError(f"k={k} is not 1 mod {p}")


@dataclass(frozen=True)
class VerifyReport:
    """Checks on one table.

    ``breakpoints`` counts x in [0, N - 2] with a(x + 1) != a(x); the wraparound
    pair (N - 1, 0) is never counted, so a change of a(x) across the wrap does
    not show up here.  ``wrap_match`` reports whether f(0) = k*f(N - 1).
    """

    is_bijection: bool
    four_periodic: bool
    match_count: int
    epsilon: Fraction
    breakpoints: int
    wrap_match: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'is_bijection': self.is_bijection,
            'four_periodic': self.four_periodic,
            'match_count': self.match_count,
            'epsilon': str(self.epsilon),
            'breakpoints': self.breakpoints,
            'wrap_match': self.wrap_match,
        }


@dataclass(frozen=True)
class CycleFunction:
    modulus: int
    k: int
    table: Tuple[int, ...]

    def __post_init__(self):
        check_multiplier(self.modulus, self.k)
        table = tuple(int(v) for v in self.table)
        if len(table) != self.modulus:
            raise ConfigError(f"table has {len(table)} entries, expected {self.modulus}")
        bad = [v for v in table if not 0 <= v < self.modulus]
        if bad:
            raise ConfigError(f"table entries {bad[:5]} outside [0, {self.modulus})")
        object.__setattr__(self, 'table', table)

    @classmethod
    def identity(cls, modulus: int, k: int) -> 'CycleFunction':
        return cls(modulus, k, tuple(range(modulus)))

    @classmethod
    def from_formula(cls, modulus: int, k: int, coefficients: Sequence[int]) -> 'CycleFunction':
        """f(x) = c(x) * k^x with c(x) given per x."""
        return cls(modulus, k, tuple(c * pow(k, x, modulus) % modulus
                                     for x, c in enumerate(coefficients)))

    @property
    def p(self) -> int:
        return split_prime_power(self.modulus)[0]

    @property
    def m(self) -> int:
        return split_prime_power(self.modulus)[1]

    def __call__(self, x: int) -> int:
        return self.table[x % self.modulus]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    def a_values(self) -> np.ndarray:
        """a(x) = f(x) * k^(-x) mod N."""
        N = self.modulus
        if N == 1:
            return np.zeros(1, dtype=np.int64)
        kinv = mod_inverse(self.k, N)
        powers = np.array([pow(int(kinv), x, N) for x in range(N)], dtype=np.int64)
        return (self.as_array() * powers) % N

    def match_flags(self) -> np.ndarray:
        """flags[x] is True when f(x + 1 mod N) == k * f(x) mod N."""
        t = self.as_array()
        return np.roll(t, -1) == (self.k * t) % self.modulus

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'x': np.arange(self.modulus), 'f': self.as_array()})

    def to_csv(self, path: Union[str, Path]) -> None:
        self.to_frame().to_csv(path, index=False)

    @classmethod
    def from_csv(cls, path: Union[str, Path], k: int) -> 'CycleFunction':
        df = pd.read_csv(path)
        if list(df.columns[:2]) != ['x', 'f']:
            raise ConfigError(f"{path}: expected columns x,f, got {list(df.columns)}")
        df = df.sort_values('x')
        if list(df['x']) != list(range(len(df))):
            raise ConfigError(f"{path}: x column must list 0..N-1 exactly once")
        return cls(len(df), k, tuple(int(v) for v in df['f']))


def verify(f: CycleFunction) -> VerifyReport:
    """Bijectivity, f^4 = id, matches and breakpoints of ``f`` (wraparound pair excluded from breakpoints)."""
    N = f.modulus
    t = f.as_array()
    identity = np.arange(N)
    is_bijection = bool(np.array_equal(np.sort(t), identity))
    four_periodic = bool(np.array_equal(t[t[t[t]]], identity))
    flags = f.match_flags()
    match_count = int(flags.sum())
    a = f.a_values()
    breakpoints = int(np.count_nonzero(a[1:] != a[:-1]))
    return VerifyReport(
        is_bijection=is_bijection,
        four_periodic=four_periodic,
        match_count=match_count,
        epsilon=Fraction(N - match_count, N),
        breakpoints=breakpoints,
        wrap_match=bool(flags[-1]),
    )


def order_dividing_four_permutations(N: int) -> List[Tuple[int, ...]]:
    """Every permutation of range(N) whose fourth power is the identity."""
    out: List[Tuple[int, ...]] = []
    table = [-1] * N

    def extend(free: List[int]) -> None:
        if not free:
            out.append(tuple(table))
            return
        a, rest = free[0], free[1:]
        table[a] = a
        extend(rest)
        for i, b in enumerate(rest):
            others = rest[:i] + rest[i + 1:]
            table[a], table[b] = b, a
            extend(others)
            for j, c in enumerate(others):
                for l, d in enumerate(others):
                    if l == j:
                        continue
                    remaining = [v for idx, v in enumerate(others) if idx not in (j, l)]
                    table[a], table[b], table[c], table[d] = b, c, d, a
                    extend(remaining)
        table[a] = -1

    extend(list(range(N)))
    return out
