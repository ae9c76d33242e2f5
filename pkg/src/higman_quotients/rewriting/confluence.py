"""Confluence diagnostics for a RuleSystem.

Every word up to a degree cap is checked exhaustively: each pair of distinct
first-step sites is applied and the two results are compared after
normalization.  Random longer monomials are then reduced under randomized
site-selection strategies and compared with the memoized normal form.
Divergences are report content, never exceptions.
"""

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from ..algebra.grammar import format_monomial, format_poly
from ..algebra.ncpoly import Monomial, Poly
from ..context import HigmanContext
from ..utils.logging_config import get_logger
from .relators import build_relators
from .rules import RuleSystem, Site

logger = get_logger(__name__)

UNIQUENESS_STRATEGIES = 100


@dataclass
class Divergence:
    input: str
    sites: Tuple[int, int]
    nf1: str
    nf2: str


@dataclass
class ConfluenceReport:
    degree_cap: int
    words_checked: int = 0
    site_pairs_checked: int = 0
    random_checked: int = 0
    steps: int = 0
    descent_violations: int = 0
    failures: List[Divergence] = field(default_factory=list)

    @property
    def confluent(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['confluent'] = self.confluent
        data['failures'] = [asdict(f) for f in self.failures]
        return data


def all_words(nvars: int, max_degree: int) -> Iterable[Monomial]:
    """Every word of length 1..max_degree, shortest first."""
    for d in range(1, max_degree + 1):
        yield from itertools.product(range(nvars), repeat=d)


def check_word(rules: RuleSystem, word: Monomial) -> Tuple[int, List[Divergence]]:
    """Compare normal forms along every pair of first-step sites of one word."""
    f = rules.ring.monomial(word)
    sites = [Site(word, pos, rule) for pos, rule in rules.monomial_sites(word)]
    failures = []
    pairs = 0
    reference = rules.normal_form(f)
    for s1, s2 in itertools.combinations(sites, 2):
        pairs += 1
        nf1 = rules.normal_form(rules.one_step(f, s1))
        nf2 = rules.normal_form(rules.one_step(f, s2))
        if nf1 != nf2 or nf1 != reference:
            failures.append(Divergence(format_monomial(word), (s1.position, s2.position),
                                       format_poly(nf1), format_poly(nf2)))
    if len(sites) == 1:
        nf1 = rules.normal_form(rules.one_step(f, sites[0]))
        if nf1 != reference:
            failures.append(Divergence(format_monomial(word), (sites[0].position, sites[0].position),
                                       format_poly(nf1), format_poly(reference)))
    return pairs, failures


def random_monomial(rng: random.Random, nvars: int, max_degree: int) -> Monomial:
    degree = rng.randint(2, max_degree)
    return tuple(rng.randrange(nvars) for _ in range(degree))


def check_strategies(rules: RuleSystem, f: Poly, seed: int,
                     strategies: int = UNIQUENESS_STRATEGIES) -> List[Divergence]:
    """Reduce ``f`` under ``strategies`` seeded random site orders; each must give the normal form."""
    reference = rules.normal_form(f)
    failures = []
    for s in range(strategies):
        result = rules.reduce(f, strategy='random', seed=seed * 1000 + s)
        if result.normal_form != reference:
            failures.append(Divergence(format_poly(f), (-1, -1),
                                       format_poly(result.normal_form), format_poly(reference)))
    return failures


def check_random(rules: RuleSystem, word: Monomial, seed: int, strategies: int = 1) -> List[Divergence]:
    return check_strategies(rules, rules.ring.monomial(word), seed, strategies)


# Worker processes rebuild their own RuleSystem once.
_WORKER_RULES: Optional[RuleSystem] = None


def _worker_init(p: int, n: int, k: int, system: str, direction: str) -> None:
    global _WORKER_RULES
    _WORKER_RULES = RuleSystem(build_relators(HigmanContext(p, n, k), system), direction)


def _worker_check(word: Monomial) -> Tuple[int, List[Divergence], int, int]:
    rules = _WORKER_RULES
    before = dict(rules.stats)
    pairs, failures = check_word(rules, word)
    return (pairs, failures, rules.stats['steps'] - before['steps'],
            rules.stats['descent_violations'] - before['descent_violations'])


def check_confluence(rules: RuleSystem, degree_cap: int = 4, samples: int = 0,
                     max_degree: int = 8, seed: int = 0, strategies: int = 1,
                     workers: int = 1) -> ConfluenceReport:
    """Exhaustive check up to ``degree_cap`` plus ``samples`` random monomials.

    With ``workers > 1`` the exhaustive part runs in a process pool; results
    are aggregated in word order, so the report does not depend on scheduling.
    """
    report = ConfluenceReport(degree_cap=degree_cap)
    start_steps = rules.stats['steps']
    start_violations = rules.stats['descent_violations']
    words: Sequence[Monomial] = list(all_words(rules.ring.nvars, degree_cap))
    logger.info(f"Checking confluence on {len(words)} words up to degree {degree_cap} ({rules})")

    extra_steps = extra_violations = 0
    if workers > 1:
        ctx = rules.context
        init_args = (ctx.p, ctx.n, ctx.k, rules.relators.system, rules.direction)
        with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init,
                                 initargs=init_args) as pool:
            for pairs, failures, steps, violations in pool.map(_worker_check, words, chunksize=16):
                report.site_pairs_checked += pairs
                report.failures.extend(failures)
                extra_steps += steps
                extra_violations += violations
    else:
        for word in words:
            pairs, failures = check_word(rules, word)
            report.site_pairs_checked += pairs
            report.failures.extend(failures)
    report.words_checked = len(words)

    rng = random.Random(seed)
    for index in range(samples):
        word = random_monomial(rng, rules.ring.nvars, max_degree)
        report.failures.extend(check_random(rules, word, seed + index, strategies))
        report.random_checked += 1
        if (index + 1) % 100 == 0:
            logger.debug(f"random confluence samples: {index + 1}/{samples}")

    report.steps = rules.stats['steps'] - start_steps + extra_steps
    report.descent_violations = rules.stats['descent_violations'] - start_violations + extra_violations
    if report.failures:
        logger.warning(f"Confluence check found {len(report.failures)} divergence(s)")
    else:
        logger.info(f"Confluence check passed: {report.words_checked} words, "
                    f"{report.site_pairs_checked} site pairs, {report.random_checked} random samples")
    return report
