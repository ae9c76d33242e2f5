"""Word-level group (Z_{p^n} * Z_{p^n}) x (Z_{p^n} * Z_{p^n}) with twisted commutation.

Every element is an even word (letters a_0, a_2) followed by an odd word
(letters a_1, a_3).  Odd letters are moved to the right of even letters with

    a1^m a0^r = a0^r a1^(m k^r)        a1^m a2^r = a2^(r k^-m) a1^m
    a3^m a0^r = a0^(r k^-m) a3^m       a3^m a2^r = a2^r a3^(m k^r)
"""

import random
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from ..algebra.grammar import format_word
from ..algebra.words import Letter
from ..context import HigmanContext
from ..exceptions import ContextMismatch
from ..utils.logging_config import get_logger
from .gamma import GammaElement, GammaGroup

logger = get_logger(__name__)

Block = Tuple[int, int]
Blocks = Tuple[Block, ...]

# (odd, even) pairs whose commutation twists the odd exponent
_TWIST_ODD = frozenset({(1, 0), (3, 2)})


def _merge(blocks: Iterable[Block], pn: int) -> Blocks:
    """Merge equal neighbours mod p^n and drop zero blocks, re-merging across gaps."""
    out: List[Block] = []
    for gen, exp in blocks:
        exp %= pn
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = (out[-1][1] + exp) % pn
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class HTildeElement:
    even: Blocks
    odd: Blocks
    group: 'HTilde' = field(compare=False, repr=False)

    def __mul__(self, other: 'HTildeElement') -> 'HTildeElement':
        return self.group.mul(self, other)

    def inverse(self) -> 'HTildeElement':
        return self.group.inv(self)

    def is_identity(self) -> bool:
        return not self.even and not self.odd

    def letters(self) -> List[Letter]:
        return list(self.even) + list(self.odd)

    def __str__(self) -> str:
        return format_word(self.letters())


class HTilde:
    """Normal-form arithmetic in the word-level group for one (p, n, k)."""

    def __init__(self, context: HigmanContext):
        self.context = context
        self.pn = context.pn
        self.kexp = context.kexp
        self.logger = get_logger(__name__)

    def __repr__(self) -> str:
        return f"HTilde({self.context})"

    def identity(self) -> HTildeElement:
        return HTildeElement((), (), self)

    def letter(self, gen: int, exp: int) -> HTildeElement:
        if gen not in (0, 1, 2, 3):
            raise ValueError(f"generator index must be in 0..3, got {gen}")
        block = _merge([(gen, exp)], self.pn)
        if gen % 2 == 0:
            return HTildeElement(block, (), self)
        return HTildeElement((), block, self)

    def generator(self, gen: int) -> HTildeElement:
        return self.letter(gen, 1)

    # -- collection ----------------------------------------------------------

    def push(self, letter: Block, even: Blocks) -> Tuple[Blocks, Block]:
        """Move the odd letter a_g^m from the left of ``even`` to its right."""
        g, m = letter
        if g % 2 != 1:
            raise ValueError(f"push needs an odd generator, got a{g}")
        m %= self.pn
        out = []
        for e, r in even:
            if (g, e) in _TWIST_ODD:
                m = int(self.kexp.kpow(r) * m)
            else:
                r = int(self.kexp.kpow_inverse(m) * r)
            out.append((e, r))
        return tuple(out), (g, m)

    def push_word(self, odd: Blocks, even: Blocks) -> Tuple[Blocks, Blocks]:
        """odd * even = even' * odd'; letters of ``odd`` are pushed right to left."""
        moved: List[Block] = []
        for letter in reversed(odd):
            even, new_letter = self.push(letter, even)
            moved.append(new_letter)
        moved.reverse()
        return even, _merge(moved, self.pn)

    def mul(self, x: HTildeElement, y: HTildeElement) -> HTildeElement:
        even_mid, odd_mid = self.push_word(x.odd, y.even)
        even = _merge(list(x.even) + list(even_mid), self.pn)
        odd = _merge(list(odd_mid) + list(y.odd), self.pn)
        return HTildeElement(even, odd, self)

    def normalize(self, raw: Sequence[Letter]) -> HTildeElement:
        """Normal form of an arbitrary word, folding letters in from the right."""
        result = self.identity()
        for gen, exp in reversed(list(raw)):
            result = self.mul(self.letter(gen, exp), result)
        return result

    def inv(self, x: HTildeElement) -> HTildeElement:
        return self.normalize([(gen, -exp) for gen, exp in reversed(x.letters())])

    def pow(self, x: HTildeElement, e: int) -> HTildeElement:
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.identity()
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- sampling and images -------------------------------------------------

    def random_word(self, rng: random.Random, length: int) -> List[Letter]:
        return [(rng.randrange(4), rng.randrange(1, self.pn)) for _ in range(length)]

    def random_element(self, rng: random.Random, max_length: int = 6) -> HTildeElement:
        return self.normalize(self.random_word(rng, rng.randint(0, max_length)))

    def hom_to_gamma(self, x: HTildeElement, gamma: GammaGroup) -> GammaElement:
        ctx = gamma.context
        if (ctx.p, ctx.n, ctx.k) != (self.context.p, self.context.n, self.context.k):
            raise ContextMismatch(f"word group at {self.context} cannot map into Gamma at {ctx}")
        return gamma.from_word(x.letters())

    def defining_relations(self) -> List[Tuple[List[Letter], List[Letter]]]:
        """The raw words a_{i+1} a_i and a_i a_{i+1}^k for i = 0..3."""
        k = self.context.k
        return [([((i + 1) % 4, 1), (i, 1)], [(i, 1), ((i + 1) % 4, k)]) for i in range(4)]


def verify_relations(htilde: HTilde, gamma: Optional[GammaGroup] = None) -> bool:
    """All four defining relations hold in normal form (and under the image in Gamma)."""
    ok = True
    for lhs, rhs in htilde.defining_relations():
        x, y = htilde.normalize(lhs), htilde.normalize(rhs)
        if x != y:
            logger.warning(f"relation {lhs} = {rhs} fails in normal form: {x} vs {y}")
            ok = False
        if gamma is not None and gamma.from_word(lhs) != gamma.from_word(rhs):
            logger.warning(f"relation {lhs} = {rhs} fails in Gamma")
            ok = False
    return ok


def verify_push_rules(htilde: HTilde, gamma: GammaGroup, exponents: Optional[Iterable[int]] = None) -> bool:
    """Both sides of every push rule agree in Gamma for the given exponents."""
    exponents = list(exponents) if exponents is not None else list(range(1, htilde.pn))
    for g in (1, 3):
        for e in (0, 2):
            for m in exponents:
                for r in exponents:
                    even, moved = htilde.push((g, m), ((e, r),))
                    left = gamma.from_word([(g, m), (e, r)])
                    right = gamma.from_word(list(even) + [moved])
                    if left != right:
                        logger.warning(f"push rule a{g}^{m} a{e}^{r} fails in Gamma")
                        return False
    return True
