"""Oriented rewrite rules, normal forms and the termination measure.

A rule replaces a length-two monomial (an odd letter followed by an even one
for the left direction, the mirror image for the right direction) by a
polynomial congruent to it modulo the relator ideal.  Terminal polynomials are
exactly the left (resp. right) reduced ones: every monomial is an even-letter
block followed by an odd-letter block (resp. the reverse).

Two engines compute normal forms:

* ``normal_form`` reduces single terms p^j * m and memoizes the result per
  (m, j).  NF(u * p^j * m) = u * NF(p^j * m) for a unit u, so these entries
  determine NF on the whole ring by linearity.
* ``reduce`` rewrites a polynomial one step at a time under a site-selection
  strategy.  It records traces and is what the confluence checks drive.

Both engines count rewrite steps and measure-descent violations in ``stats``.
"""

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from ..algebra.ncpoly import Monomial, Poly, PolyRing, graded_key
from ..exceptions import ContextMismatch, IterationCapExceeded, ShapeMismatch, SiteInvalid
from ..utils.logging_config import get_logger
from .relators import RelatorSet, q0_in

logger = get_logger(__name__)

DIRECTIONS = ('left', 'right')
DEFAULT_STEP_CAP = 5_000_000
EXPERIMENTAL_STEP_CAP = 200_000

MemoKey = Tuple[Monomial, int]


@dataclass(frozen=True)
class RewriteRule:
    lhs: Monomial
    rhs: Poly
    relator: int           # index i of the pair (i, i+1)
    sign: int              # lhs - rhs == sign * g_i

    def __str__(self) -> str:
        return f"{'.'.join(f'x{i}' for i in self.lhs)} -> {self.rhs}"


@dataclass(frozen=True, order=True)
class TermMeasure:
    """(torder, count, defect), compared lexicographically."""

    torder: int
    count: int
    defect: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.torder, self.count, self.defect)


@dataclass(frozen=True)
class Site:
    monomial: Monomial
    position: int
    rule: RewriteRule


@dataclass
class TraceStep:
    monomial: Monomial
    position: int
    lhs: Monomial
    before: TermMeasure
    after: Optional[TermMeasure]     # largest measure among produced terms

    def to_dict(self) -> Dict[str, object]:
        return {
            'monomial': '.'.join(f"x{i}" for i in self.monomial),
            'position': self.position,
            'lhs': '.'.join(f"x{i}" for i in self.lhs),
            'before': list(self.before.as_tuple()),
            'after': list(self.after.as_tuple()) if self.after else None,
        }


@dataclass
class ReduceResult:
    normal_form: Poly
    steps: int
    trace: List[TraceStep] = field(default_factory=list)


Strategy = Union[str, Callable[[Poly, List[Site]], Site]]


def _closed_form_rule(relators: RelatorSet, i: int, i1: int, lhs: Monomial) -> RewriteRule:
    ring = relators.ring
    p = ring.modulus.p
    q = q0_in(relators.q0, ring, i1)
    xi, xi1 = ring.var(i), ring.var(i1)
    tail = q + (xi * q).scale(p)           # (1 + p*x_i) * Q0(x_{i+1})
    if lhs == (i1, i):
        rhs, sign = xi * xi1 - tail, 1
    else:
        rhs, sign = xi1 * xi + tail, -1
    g = relators.relator_for(i)
    if ring.monomial(lhs) - rhs != g.scale(sign):
        raise ShapeMismatch(f"rule for g{i} at {lhs} is not a rearrangement of g{i}")
    return RewriteRule(lhs, rhs, i, sign)


def build_rules(relators: RelatorSet, direction: str = 'left') -> List[RewriteRule]:
    """One rule per relator; left rules start with an odd letter, right rules with an even one."""
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    want_odd_first = direction == 'left'
    rules = []
    for i, i1 in relators.pairs:
        lhs = (i1, i) if (i1 % 2 == 1) == want_odd_first else (i, i1)
        rules.append(_closed_form_rule(relators, i, i1, lhs))
    lhs_set = {rule.lhs for rule in rules}
    if len(lhs_set) != len(rules):
        raise ShapeMismatch(f"duplicate left-hand sides in {[str(r) for r in rules]}")
    return rules


class RuleSystem:
    """Rewrite rules for one RelatorSet plus both normal-form engines."""

    def __init__(self, relators: RelatorSet, direction: str = 'left',
                 rules: Optional[Sequence[RewriteRule]] = None,
                 step_cap: Optional[int] = None):
        self.relators = relators
        self.context = relators.context
        self.ring: PolyRing = relators.ring
        self.direction = direction
        self.rules: List[RewriteRule] = list(rules) if rules is not None else build_rules(relators, direction)
        self._by_lhs: Dict[Monomial, RewriteRule] = {rule.lhs: rule for rule in self.rules}
        self.logger = get_logger(__name__)

        if step_cap is None:
            step_cap = EXPERIMENTAL_STEP_CAP if self.context.is_experimental else DEFAULT_STEP_CAP
        self.step_cap = step_cap

        # letters counted by the middle component of the measure
        if relators.system == 'A0':
            self._counted: FrozenSet[int] = frozenset({0})
        elif direction == 'left':
            self._counted = frozenset(i for i in range(self.ring.nvars) if i % 2 == 1)
        else:
            self._counted = frozenset(i for i in range(self.ring.nvars) if i % 2 == 0)
        # defect counts pairs (first, second) with first from this parity set
        self._defect_first_odd = direction == 'left'

        self._memo: Dict[MemoKey, Dict[Monomial, int]] = {}
        self.stats: Dict[str, int] = {'steps': 0, 'descent_violations': 0}

    @classmethod
    def from_relators(cls, relators: RelatorSet, direction: str = 'left', **kwargs) -> 'RuleSystem':
        return cls(relators, direction, **kwargs)

    def __repr__(self) -> str:
        return (f"RuleSystem({self.relators.system}, {self.direction}, {self.context}, "
                f"{len(self.rules)} rules)")

    # -- sites -------------------------------------------------------------

    def monomial_sites(self, monomial: Monomial) -> List[Tuple[int, RewriteRule]]:
        out = []
        for pos in range(len(monomial) - 1):
            rule = self._by_lhs.get(monomial[pos:pos + 2])
            if rule is not None:
                out.append((pos, rule))
        return out

    def sites(self, f: Poly) -> List[Site]:
        out = []
        for monomial in f.monomials():
            for pos, rule in self.monomial_sites(monomial):
                out.append(Site(monomial, pos, rule))
        return out

    def is_terminal_monomial(self, monomial: Monomial) -> bool:
        by_lhs = self._by_lhs
        for pos in range(len(monomial) - 1):
            if monomial[pos:pos + 2] in by_lhs:
                return False
        return True

    def is_terminal(self, f: Poly) -> bool:
        return all(self.is_terminal_monomial(m) for m in f.terms)

    def is_reduced_monomial(self, monomial: Monomial) -> bool:
        """Block test: evens then odds (left) or odds then evens (right)."""
        first_parity = 0 if self.direction == 'left' else 1
        switched = False
        for letter in monomial:
            if letter % 2 != first_parity:
                switched = True
            elif switched:
                return False
        return True

    # -- measure -----------------------------------------------------------

    def measure(self, coeff: int, monomial: Monomial) -> TermMeasure:
        modulus = self.ring.modulus
        torder = modulus.n - modulus.valuation(coeff)
        counted = self._counted
        count = sum(1 for letter in monomial if letter in counted)
        first_parity = 1 if self._defect_first_odd else 0
        defect = 0
        seen_first = 0
        for letter in monomial:
            if letter % 2 == first_parity:
                seen_first += 1
            else:
                defect += seen_first
        return TermMeasure(torder, count, defect)

    def _check_descent(self, before: TermMeasure, produced: Dict[Monomial, int]) -> Optional[TermMeasure]:
        worst = None
        for monomial, coeff in produced.items():
            after = self.measure(coeff, monomial)
            if worst is None or after > worst:
                worst = after
            if not after < before:
                self.stats['descent_violations'] += 1
                self.logger.debug(f"descent violation: {before.as_tuple()} -> {after.as_tuple()} "
                                  f"at {monomial}")
        return worst

    # -- single step -------------------------------------------------------

    def _rewrite_term(self, coeff: int, monomial: Monomial, pos: int, rule: RewriteRule) -> Dict[Monomial, int]:
        pn = self.ring.pn
        prefix, suffix = monomial[:pos], monomial[pos + 2:]
        out: Dict[Monomial, int] = {}
        for r_mono, r_coeff in rule.rhs.terms.items():
            m = prefix + r_mono + suffix
            out[m] = (out.get(m, 0) + coeff * r_coeff) % pn
        return {m: c for m, c in out.items() if c}

    def one_step(self, f: Poly, site: Site) -> Poly:
        monomial, pos, rule = site.monomial, site.position, site.rule
        coeff = f.terms.get(monomial)
        if coeff is None:
            raise SiteInvalid(f"monomial {monomial} does not occur in {f}")
        if monomial[pos:pos + 2] != rule.lhs or self._by_lhs.get(rule.lhs) != rule:
            raise SiteInvalid(f"no redex of {rule} at position {pos} of {monomial}")
        produced = self._rewrite_term(coeff, monomial, pos, rule)
        self.stats['steps'] += 1
        self._check_descent(self.measure(coeff, monomial), produced)
        acc = dict(f.terms)
        del acc[monomial]
        for m, c in produced.items():
            acc[m] = acc.get(m, 0) + c
        return Poly(self.ring, acc)

    # -- memoized engine ---------------------------------------------------

    def _split(self, coeff: int) -> Tuple[int, int]:
        """coeff = p^j * u with u a unit (as integers in [0, p^n))."""
        j = self.ring.modulus.valuation(coeff)
        return j, coeff // self.ring.modulus.p ** j

    def _expand_key(self, key: MemoKey) -> Optional[List[Tuple[MemoKey, int]]]:
        monomial, j = key
        sites = self.monomial_sites(monomial)
        if not sites:
            return None
        pos, rule = sites[0]
        coeff = self.ring.modulus.p ** j
        produced = self._rewrite_term(coeff, monomial, pos, rule)
        self.stats['steps'] += 1
        self._check_descent(self.measure(coeff, monomial), produced)
        out = []
        for m, c in produced.items():
            jj, u = self._split(c)
            out.append(((m, jj), u))
        return out

    def _term_nf(self, root: MemoKey) -> Dict[Monomial, int]:
        memo = self._memo
        if root in memo:
            return memo[root]
        pn = self.ring.pn
        expansions: Dict[MemoKey, List[Tuple[MemoKey, int]]] = {}
        in_progress: Set[MemoKey] = set()
        stack = [root]
        budget = self.step_cap
        while stack:
            key = stack[-1]
            if key in memo:
                stack.pop()
                continue
            if key not in expansions:
                expansion = self._expand_key(key)
                budget -= 1
                if budget < 0:
                    raise IterationCapExceeded(
                        f"normal form of {root[0]} needs more than {self.step_cap} steps")
                if expansion is None:
                    memo[key] = {key[0]: self.ring.modulus.p ** key[1] % pn}
                    stack.pop()
                    continue
                expansions[key] = expansion
                in_progress.add(key)
                missing = [child for child, _ in expansion if child not in memo]
                for child in missing:
                    if child in in_progress:
                        raise IterationCapExceeded(
                            f"rewriting cycles at {child[0]} while reducing {root[0]}")
                stack.extend(missing)
                continue
            acc: Dict[Monomial, int] = {}
            for child, unit in expansions.pop(key):
                for m, c in memo[child].items():
                    acc[m] = (acc.get(m, 0) + unit * c) % pn
            memo[key] = {m: c for m, c in acc.items() if c}
            in_progress.discard(key)
            stack.pop()
        return memo[root]

    def _check_ring(self, f: Poly) -> None:
        if f.ring != self.ring:
            raise ContextMismatch(f"polynomial over {f.ring} given to rules over {self.ring}")

    def normal_form(self, f: Poly) -> Poly:
        self._check_ring(f)
        acc: Dict[Monomial, int] = {}
        for monomial, coeff in f.terms.items():
            j, u = self._split(coeff)
            for m, c in self._term_nf((monomial, j)).items():
                acc[m] = acc.get(m, 0) + u * c
        return Poly(self.ring, acc)

    def ideal_member(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def clear_cache(self) -> None:
        self._memo.clear()

    @property
    def cache_size(self) -> int:
        return len(self._memo)

    # -- step engine -------------------------------------------------------

    def _choose(self, terms: Dict[Monomial, int], pending: Set[Monomial], strategy: Strategy,
                rng: Optional[random.Random]) -> Site:
        if callable(strategy):
            return strategy(Poly(self.ring, terms, _reduced=True), [Site(m, pos, rule) for m in sorted(pending)
                                for pos, rule in self.monomial_sites(m)])
        if strategy == 'canonical':
            monomial = max(pending, key=graded_key)
            pos, rule = self.monomial_sites(monomial)[0]
            return Site(monomial, pos, rule)
        if strategy == 'random':
            monomial = rng.choice(sorted(pending))
            pos, rule = rng.choice(self.monomial_sites(monomial))
            return Site(monomial, pos, rule)
        raise ValueError(f"unknown strategy {strategy!r}")

    def reduce(self, f: Poly, strategy: Strategy = 'canonical', seed: Optional[int] = None,
               trace: bool = False, step_cap: Optional[int] = None) -> ReduceResult:
        """Rewrite ``f`` to its terminal form one site at a time.

        ``strategy`` is "canonical" (leftmost redex of the graded-largest
        monomial), "random" (seeded) or a callable picking a Site.
        """
        self._check_ring(f)
        cap = self.step_cap if step_cap is None else step_cap
        rng = random.Random(seed) if strategy == 'random' else None
        pn = self.ring.pn
        terms = dict(f.terms)
        pending = {m for m in terms if not self.is_terminal_monomial(m)}
        steps = 0
        record: List[TraceStep] = []
        while pending:
            if steps >= cap:
                raise IterationCapExceeded(f"no terminal form after {cap} steps")
            site = self._choose(terms, pending, strategy, rng)
            monomial, pos, rule = site.monomial, site.position, site.rule
            coeff = terms.pop(monomial)
            pending.discard(monomial)
            produced = self._rewrite_term(coeff, monomial, pos, rule)
            before = self.measure(coeff, monomial)
            after = self._check_descent(before, produced)
            self.stats['steps'] += 1
            steps += 1
            if trace:
                record.append(TraceStep(monomial, pos, rule.lhs, before, after))
            for m, c in produced.items():
                value = (terms.get(m, 0) + c) % pn
                if value:
                    terms[m] = value
                    if not self.is_terminal_monomial(m):
                        pending.add(m)
                else:
                    terms.pop(m, None)
                    pending.discard(m)
        self.logger.debug(f"reduced in {steps} steps ({strategy if isinstance(strategy, str) else 'custom'})")
        return ReduceResult(Poly(self.ring, terms, _reduced=True), steps, record)

    def reduce_monomial(self, monomial: Iterable[int], **kwargs) -> ReduceResult:
        return self.reduce(self.ring.monomial(monomial), **kwargs)


def corrupted_rules(relators: RelatorSet, direction: str = 'left') -> List[RewriteRule]:
    """Rules that merely commute the two letters (negative control)."""
    out = []
    for rule in build_rules(relators, direction):
        a, b = rule.lhs
        out.append(RewriteRule(rule.lhs, relators.ring.monomial((b, a)), rule.relator, rule.sign))
    return out
