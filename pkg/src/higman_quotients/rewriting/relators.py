"""Relator polynomials g_i of the Higman relations a_{i+1} a_i = a_i a_{i+1}^k.

Each g_i is obtained by expanding a_{i+1} a_i - a_i a_{i+1}^k under
a_j -> 1 + p*x_j over exact integers, dividing by p^2 and reducing mod p^n.
The result has the closed form

    g_i = x_{i+1} x_i - x_i x_{i+1} + Q0(x_{i+1}) + p * x_i * Q0(x_{i+1})

which build_relators checks term by term.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from sympy import binomial, multiplicity

from ..algebra.magnus import magnus_expand
from ..algebra.ncpoly import Poly, PolyRing
from ..algebra.zmod import Modulus
from ..context import HigmanContext
from ..exceptions import ConfigError, ShapeMismatch
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

# system name -> (number of variables, relator pairs (i, i+1))
SYSTEMS: Dict[str, Tuple[int, Tuple[Tuple[int, int], ...]]] = {
    'H': (4, ((0, 1), (1, 2), (2, 3), (3, 0))),
    'A0': (2, ((0, 1),)),
    'A01': (3, ((0, 1), (1, 2))),
}


def q0_coefficients(k: int, p: int) -> List[int]:
    """Exact integer coefficients [c_0, c_1, ..., c_k] of Q0(y), before reduction."""
    if (k - 1) % p:
        raise ConfigError(f"p={p} must divide k-1={k - 1}")
    coeffs = [0] * (k + 1)
    coeffs[1] = -((k - 1) // p)
    for j in range(2, k + 1):
        coeffs[j] = -int(binomial(k, j)) * p ** (j - 2)
    return coeffs


def build_q0(k: int, p: int, n: int) -> Poly:
    """Q0 as a polynomial in the single variable y = x0, reduced mod p^n."""
    ring = PolyRing.create(Modulus(p, n), 1)
    return ring.poly({(0,) * j: c for j, c in enumerate(q0_coefficients(k, p)) if j})


def q0_in(q0: Poly, ring: PolyRing, var: int) -> Poly:
    """Q0(x_var) inside ``ring``."""
    return q0.substitute([var], ring)


def closed_form(ring: PolyRing, q0: Poly, i: int, i1: int) -> Poly:
    xi, xi1 = ring.var(i), ring.var(i1)
    q = q0_in(q0, ring, i1)
    p = ring.modulus.p
    return xi1 * xi - xi * xi1 + q + (xi * q).scale(p)


@dataclass
class RelatorSet:
    """g_0 .. g_3 (or the subset belonging to a sub-system) for one context."""

    context: HigmanContext
    system: str
    ring: PolyRing
    pairs: Tuple[Tuple[int, int], ...]
    g: List[Poly]
    q0: Poly
    alpha: List[int] = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def relator_for(self, i: int) -> Poly:
        """The relator of the pair (i, i+1)."""
        for idx, (a, _) in enumerate(self.pairs):
            if a == i:
                return self.g[idx]
        raise KeyError(f"no relator for pair starting at x{i} in system {self.system}")

    def to_dict(self) -> Dict[str, object]:
        return {
            'system': self.system,
            'ring': str(self.ring),
            'q0': str(self.q0),
            'alpha': list(self.alpha),
            'g': {f"g{a}": str(poly) for (a, _), poly in zip(self.pairs, self.g)},
        }


def _raw_relator(i: int, i1: int, k: int, p: int) -> Dict[Tuple[int, ...], int]:
    """a_{i+1} a_i - a_i a_{i+1}^k over exact integers (no truncation needed)."""
    D = k + 1
    lhs = magnus_expand([(i1, 1), (i, 1)], D, scale=p)
    rhs = magnus_expand([(i, 1), (i1, k)], D, scale=p)
    return dict((lhs - rhs).terms)


def build_relators(context: HigmanContext, system: str = 'H') -> RelatorSet:
    if system not in SYSTEMS:
        raise ConfigError(f"unknown system {system!r}; expected one of {sorted(SYSTEMS)}")
    nvars, pairs = SYSTEMS[system]
    p, k = context.p, context.k
    ring = PolyRing.create(context.modulus, nvars)
    q0 = build_q0(k, p, context.n)
    p2 = p * p

    relators, alphas = [], []
    for i, i1 in pairs:
        raw = _raw_relator(i, i1, k, p)
        # alpha: the largest e with p^e dividing every coefficient
        alpha = min(multiplicity(p, c) for c in raw.values())
        lead = raw.get((i1, i), 0)
        if lead % (p2 * p) == 0:
            raise ShapeMismatch(f"g{i}: coefficient of x{i1}x{i} is divisible by p^3")
        if alpha != 2:
            raise ShapeMismatch(f"g{i}: normalization exponent {alpha} != 2")
        g = ring.poly({m: c // p2 for m, c in raw.items()})
        expected = closed_form(ring, q0, i, i1)
        if g != expected:
            raise ShapeMismatch(f"g{i} = {g} differs from the closed form {expected}")
        relators.append(g)
        alphas.append(alpha)

    logger.info(f"Built {len(relators)} relator(s) for system {system} at {context}")
    for (i, _), g in zip(pairs, relators):
        logger.debug(f"g{i} = {g}")
    return RelatorSet(context, system, ring, pairs, relators, q0, alphas)


def rotate(poly: Poly, shift: int = 1) -> Poly:
    """x_i -> x_{i+shift mod m} on a polynomial over m variables."""
    m = poly.ring.nvars
    return poly.substitute([(i + shift) % m for i in range(m)])


def rotation_mapping(nvars: int, shift: int = 1) -> Sequence[int]:
    return [(i + shift) % nvars for i in range(nvars)]
