"""The finite groups generated by the units 1 + p*x_i.

``GammaGroup`` works modulo the relator ideal: every element is stored as the
normal form of a unit, so element identity is polynomial equality.
``FreeUnitGroup`` is the same construction with no relators, used for the
order cross-checks against the free p-quotient.
"""

from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from math import lcm
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from ..algebra.ncpoly import Poly, PolyRing
from ..algebra.words import Letter
from ..context import HigmanContext
from ..exceptions import CapExceeded, ContextMismatch, NotInvertibleForm
from ..rewriting.relators import build_relators, rotate
from ..rewriting.rules import RewriteRule, RuleSystem
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class GammaElement:
    """A unit 1 + p*(...) in normal form."""

    nf: Poly
    group: 'UnitGroup' = field(compare=False, repr=False)

    def __mul__(self, other: 'GammaElement') -> 'GammaElement':
        return self.group.mul(self, other)

    def __pow__(self, e: int) -> 'GammaElement':
        return self.group.pow(self, e)

    def inverse(self) -> 'GammaElement':
        return self.group.inv(self)

    def is_identity(self) -> bool:
        return self.nf.is_one()

    def __str__(self) -> str:
        return str(self.nf)


class UnitGroup(ABC):
    """Base class for groups of normalized units of Z_{p^n}[x]."""

    def __init__(self, context: HigmanContext, ring: PolyRing):
        self.context = context
        self.ring = ring
        self.logger = get_logger(self.__class__.__name__)

    @abstractmethod
    def reduce(self, poly: Poly) -> Poly:
        """Canonical representative of ``poly`` in this group's ring."""
        pass

    @property
    def ngens(self) -> int:
        return self.ring.nvars

    def element(self, poly: Poly) -> GammaElement:
        if poly.ring != self.ring:
            raise ContextMismatch(f"polynomial over {poly.ring} is not in {self.ring}")
        nf = self.reduce(poly)
        if not nf.is_unit_form():
            raise NotInvertibleForm(f"{nf} is not a unit of the form 1 + p*q")
        return GammaElement(nf, self)

    def _wrap(self, nf: Poly) -> GammaElement:
        return GammaElement(nf, self)

    def _check(self, *elements: GammaElement) -> None:
        for a in elements:
            if a.group is not self and a.nf.ring != self.ring:
                raise ContextMismatch(f"element {a} belongs to a different group")

    def identity(self) -> GammaElement:
        return self._wrap(self.ring.one())

    def generator(self, i: int) -> GammaElement:
        return self._wrap(self.reduce(self.ring.gen_unit(i)))

    def generators(self) -> List[GammaElement]:
        return [self.generator(i) for i in range(self.ngens)]

    def mul(self, a: GammaElement, b: GammaElement) -> GammaElement:
        self._check(a, b)
        return self._wrap(self.reduce(a.nf * b.nf))

    def inv(self, a: GammaElement) -> GammaElement:
        """Series inverse sum_{j<n} (-(a-1))^j, normalized after every product."""
        self._check(a)
        minus_z = -(a.nf - 1)
        result = self.ring.one()
        power = self.ring.one()
        for _ in range(1, self.context.n):
            power = self.reduce(power * minus_z)
            if power.is_zero():
                break
            result = result + power
        return self._wrap(result)

    def pow(self, a: GammaElement, e: int) -> GammaElement:
        """a^e for any integer representative e; only e mod p^n matters."""
        self._check(a)
        e = int(e) % self.context.pn
        result = self.ring.one()
        base = a.nf
        while e:
            if e & 1:
                result = self.reduce(result * base)
            e >>= 1
            if e:
                base = self.reduce(base * base)
        return self._wrap(result)

    def order(self, a: GammaElement) -> int:
        """Exact order, found by repeated p-th powers."""
        p = self.context.p
        order = 1
        x = a
        while not x.is_identity():
            x = self.pow(x, p)
            order *= p
        return order

    def from_word(self, word: Sequence[Letter]) -> GammaElement:
        result = self.identity()
        for gen, exp in word:
            result = self.mul(result, self.pow(self.generator(gen), exp))
        return result

    def enumerate(self, generators: Sequence[GammaElement], cap: int = DEFAULT_CAP) -> List[GammaElement]:
        """Breadth-first closure of ``generators`` under right multiplication.

        Returns the elements in discovery order; raises CapExceeded as soon as
        more than ``cap`` elements are found.
        """
        self._check(*generators)
        start = self.identity()
        seen: Set[GammaElement] = {start}
        order = [start]
        frontier = deque([start])
        depth = 0
        while frontier:
            level = len(frontier)
            for _ in range(level):
                x = frontier.popleft()
                for g in generators:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        frontier.append(y)
                        if len(order) > cap:
                            raise CapExceeded(
                                f"subgroup has more than {cap} elements", size=len(order))
            depth += 1
            self.logger.debug(f"BFS depth {depth}: {len(order)} elements, frontier {len(frontier)}")
        self.logger.info(f"Enumerated subgroup of order {len(order)} on {len(generators)} generators")
        return order

    def kernel_witness(self, a: GammaElement) -> 'KernelWitness':
        """p^j * (a - 1) for a of order p^j; zero for p odd."""
        order = self.order(a)
        product = self.reduce((a.nf - 1).scale(order))
        return KernelWitness(str(a), order, str(product), product.is_zero())


class GammaGroup(UnitGroup):
    """Units of Z_{p^n}[x_0..x_3] modulo the relator ideal, in normal form."""

    def __init__(self, context: HigmanContext, system: str = 'H', direction: str = 'left',
                 rules: Optional[Sequence[RewriteRule]] = None):
        relators = build_relators(context, system)
        super().__init__(context, relators.ring)
        self.relators = relators
        self.rules = RuleSystem(relators, direction, rules=rules)

    def reduce(self, poly: Poly) -> Poly:
        return self.rules.normal_form(poly)

    def __repr__(self) -> str:
        return f"GammaGroup({self.context}, {self.relators.system})"


class FreeUnitGroup(UnitGroup):
    """The relator-free group generated by 1 + p*y_i in Z_{p^n}[y_0..y_{m-1}]."""

    def __init__(self, context: HigmanContext, nvars: int = 2):
        super().__init__(context, PolyRing.create(context.modulus, nvars))

    def reduce(self, poly: Poly) -> Poly:
        return poly

    def __repr__(self) -> str:
        return f"FreeUnitGroup({self.context}, {self.ring.nvars})"


@dataclass
class KernelWitness:
    element: str
    order: int
    product: str
    vanishes: bool


@dataclass
class ZSReport:
    sizeS: int
    sizeT: int
    sizeG: int
    intersection_trivial: bool
    unique_factorization: bool
    factor: Dict[GammaElement, Tuple[GammaElement, GammaElement]] = field(default_factory=dict, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sizeS': self.sizeS,
            'sizeT': self.sizeT,
            'sizeG': self.sizeG,
            'intersection_trivial': self.intersection_trivial,
            'unique_factorization': self.unique_factorization,
        }

    def zs_factor(self, g: GammaElement) -> Tuple[GammaElement, GammaElement]:
        """The unique (s, t) with s in <a0, a2>, t in <a1, a3> and s*t = g."""
        return self.factor[g]


@dataclass
class JacobsonReport:
    free_size: int
    sizeS: int

    @property
    def equal(self) -> bool:
        return self.free_size == self.sizeS

    def to_dict(self) -> Dict[str, Any]:
        return {'free_size': self.free_size, 'sizeS': self.sizeS, 'equal': self.equal}


@dataclass
class BSReport:
    pair: Tuple[int, int]
    size: int
    word_level_size: int
    generator_orders: Tuple[int, int]
    relation_holds: bool

    @property
    def matches_word_level(self) -> bool:
        return self.size == self.word_level_size

    @property
    def collapse_index(self) -> Optional[int]:
        """|word-level subgroup| / |image|, or None when the size does not divide it."""
        if self.size and self.word_level_size % self.size == 0:
            return self.word_level_size // self.size
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pair': list(self.pair),
            'size': self.size,
            'word_level_size': self.word_level_size,
            'matches_word_level': self.matches_word_level,
            'collapse_index': self.collapse_index,
            'generator_orders': list(self.generator_orders),
            'relation_holds': self.relation_holds,
        }


@dataclass
class RotationReport:
    relators_cycle: bool
    is_permutation: bool
    order: int

    def to_dict(self) -> Dict[str, Any]:
        return {'relators_cycle': self.relators_cycle, 'is_permutation': self.is_permutation,
                'order': self.order}


def relation_holds(group: UnitGroup, i: int, i1: int) -> bool:
    """a_{i+1} a_i == a_i a_{i+1}^k."""
    a, b = group.generator(i), group.generator(i1)
    return group.mul(b, a) == group.mul(a, group.pow(b, group.context.k))


def check_relators(group: GammaGroup) -> bool:
    ok = all(relation_holds(group, i, i1) for i, i1 in group.relators.pairs)
    logger.info(f"Relator check at {group.context}: {'pass' if ok else 'FAIL'}")
    return ok


def zs_check(group: GammaGroup, cap: int = DEFAULT_CAP) -> ZSReport:
    """Factorization of <a0..a3> as <a0, a2> * <a1, a3>."""
    gens = group.generators()
    evens = [g for i, g in enumerate(gens) if i % 2 == 0]
    odds = [g for i, g in enumerate(gens) if i % 2 == 1]
    S = group.enumerate(evens, cap)
    T = group.enumerate(odds, cap)
    G = group.enumerate(gens, cap)
    identity = group.identity()
    intersection_trivial = set(S) & set(T) == {identity}

    factor: Dict[GammaElement, Tuple[GammaElement, GammaElement]] = {}
    injective = True
    for s in S:
        for t in T:
            g = group.mul(s, t)
            if g in factor:
                injective = False
            else:
                factor[g] = (s, t)
    surjective = set(factor) == set(G)
    report = ZSReport(len(S), len(T), len(G), intersection_trivial, injective and surjective, factor)
    logger.info(f"zs-check at {group.context}: |S|={report.sizeS} |T|={report.sizeT} "
                f"|G|={report.sizeG} trivial={intersection_trivial} unique={report.unique_factorization}")
    return report


def jacobson_check(group: GammaGroup, cap: int = DEFAULT_CAP, sizeS: Optional[int] = None) -> JacobsonReport:
    """Order of the free two-generator quotient against |<a0, a2>|."""
    free = FreeUnitGroup(group.context, 2)
    free_size = len(free.enumerate(free.generators(), cap))
    if sizeS is None:
        gens = group.generators()
        sizeS = len(group.enumerate([gens[0], gens[2]], cap))
    report = JacobsonReport(free_size, sizeS)
    logger.info(f"jacobson-check at {group.context}: free={free_size} S={sizeS}")
    return report


def bs_check(group: GammaGroup, i: int = 0, cap: int = DEFAULT_CAP) -> BSReport:
    """Size of <a_i, a_{i+1}> against the word-level order p^(2n)."""
    i1 = (i + 1) % group.ngens
    a, b = group.generator(i), group.generator(i1)
    size = len(group.enumerate([a, b], cap))
    report = BSReport((i, i1), size, group.context.pn ** 2,
                      (group.order(a), group.order(b)), relation_holds(group, i, i1))
    if not report.matches_word_level:
        logger.warning(f"<a{i}, a{i1}> has {size} elements in Gamma but {report.word_level_size} "
                       f"at word level (index {report.collapse_index})")
    return report


def rotation_check(group: GammaGroup, elements: Optional[Sequence[GammaElement]] = None,
                   cap: int = DEFAULT_CAP) -> RotationReport:
    """x_i -> x_{i+1}: relators cycle and the induced map permutes the group."""
    relators = group.relators
    nvars = group.ring.nvars
    cycled = all(
        rotate(relators.relator_for(i)) == relators.relator_for((i + 1) % nvars)
        for i, _ in relators.pairs)
    if elements is None:
        elements = group.enumerate(group.generators(), cap)
    index = {x: pos for pos, x in enumerate(elements)}
    image = []
    for x in elements:
        y = group._wrap(group.reduce(rotate(x.nf)))
        if y not in index:
            return RotationReport(cycled, False, 0)
        image.append(index[y])
    if len(set(image)) != len(image):
        return RotationReport(cycled, False, 0)
    order = 1
    visited = [False] * len(image)
    for start in range(len(image)):
        if visited[start]:
            continue
        length = 0
        pos = start
        while not visited[pos]:
            visited[pos] = True
            pos = image[pos]
            length += 1
        order = lcm(order, length)
    return RotationReport(cycled, True, order)
