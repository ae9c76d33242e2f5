"""Searching for permutations f of Z/N with f^4 = id and many x with f(x+1) = k f(x).

f^4 = id is a hard constraint of every strategy: a partial assignment is only
extended while each of its components is a closed cycle of length 1, 2 or 4
or an open chain of at most four points.
"""

import random
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..exceptions import BudgetExceeded, CapExceeded, ConfigError
from ..utils.logging_config import get_logger
from .cycle_function import (CycleFunction, VerifyReport, check_multiplier,
                             order_dividing_four_permutations, verify)

logger = get_logger(__name__)

STRATEGIES = ('exhaustive', 'backtrack', 'block_ansatz')
ENUMERATION_LIMIT = 9
ORACLE_CAP = 27
ORACLE_NODE_BUDGET = 2_000_000
DEFAULT_NODE_BUDGET = 200_000
REPAIR_NODE_BUDGET = 2_000


@dataclass
class SearchResult:
    function: CycleFunction
    report: VerifyReport
    strategy: str
    nodes: int
    complete: bool
    budget_exhausted: bool = False
    restarts: int = 0
    discarded: int = 0
    elapsed: float = 0.0

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        data = {
            'modulus': self.function.modulus,
            'k': self.function.k,
            'strategy': self.strategy,
            'table': list(self.function.table),
            'report': self.report.to_dict(),
            'nodes': self.nodes,
            'complete': self.complete,
            'budget_exhausted': self.budget_exhausted,
            'restarts': self.restarts,
            'discarded': self.discarded,
        }
        if timings:
            data['elapsed_seconds'] = round(self.elapsed, 3)
        return data


class _Stop(Exception):
    pass


class BranchAndBound:
    """Depth-first assignment of f(0), f(1), ... with an optimistic bound.

    Matches are counted as soon as both ends of a pair are assigned; the bound
    adds every undecided pair (the wraparound pair included).  Only strict
    improvements replace the incumbent, so with ascending candidates the
    result is the lexicographically least optimum.
    """

    def __init__(self, modulus: int, k: int,
                 candidates: Optional[Callable[[int, List[int]], Sequence[int]]] = None,
                 node_budget: Optional[int] = None, deadline: Optional[float] = None,
                 best: int = -1):
        self.N = modulus
        self.k = k % modulus if modulus > 1 else 0
        self.candidates = candidates or (lambda x, f: range(self.N))
        self.node_budget = node_budget
        self.deadline = deadline
        self.f = [-1] * modulus
        self.finv = [-1] * modulus
        self.nodes = 0
        self.best = best
        self.best_table: Optional[Tuple[int, ...]] = None
        self.stopped = False

    def _component_ok(self, x: int) -> bool:
        f, finv = self.f, self.finv
        nodes = 1
        cur = x
        while f[cur] != -1:
            cur = f[cur]
            if cur == x:
                return nodes in (1, 2, 4)
            nodes += 1
            if nodes > 4:
                return False
        cur = x
        while finv[cur] != -1:
            cur = finv[cur]
            nodes += 1
            if nodes > 4:
                return False
        return True

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise _Stop()
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise _Stop()

    def _dfs(self, x: int, matches: int) -> None:
        self._tick()
        N, f = self.N, self.f
        if x == N:
            total = matches + (1 if f[0] == self.k * f[N - 1] % N else 0)
            if total > self.best:
                self.best = total
                self.best_table = tuple(f)
            return
        bound = matches + (N - x + 1 if x >= 1 else N)
        if bound <= self.best:
            return
        target = self.k * f[x - 1] % N if x >= 1 else None
        seen = set()
        for y in self.candidates(x, f):
            if y in seen or self.finv[y] != -1:
                continue
            seen.add(y)
            f[x] = y
            self.finv[y] = x
            if self._component_ok(x):
                self._dfs(x + 1, matches + (1 if y == target else 0))
            f[x] = -1
            self.finv[y] = -1

    def run(self) -> bool:
        """True when the search space was fully explored."""
        try:
            self._dfs(0, 0)
        except _Stop:
            self.stopped = True
            return False
        return True


def _verified(N: int, k: int, table: Tuple[int, ...]) -> Tuple[CycleFunction, VerifyReport]:
    f = CycleFunction(N, k, table)
    report = verify(f)
    if not (report.is_bijection and report.four_periodic):
        raise AssertionError(f"search produced an invalid table {table}")
    return f, report


def brute_oracle(modulus: int, k: int, cap: int = ORACLE_CAP, budget: Optional[float] = None,
                 node_budget: Optional[int] = None) -> Tuple[int, CycleFunction]:
    """Exact maximum match count over all f with f^4 = id, and its lex-least witness.

    Up to ENUMERATION_LIMIT every admissible f is listed.  Above it the branch
    and bound runs under ``budget`` seconds and ``node_budget`` nodes
    (ORACLE_NODE_BUDGET when neither is given); BudgetExceeded is raised when
    the search space is not exhausted.
    """
    check_multiplier(modulus, k)
    N = modulus
    if N == 1:
        return 1, CycleFunction.identity(1, k)
    if N <= ENUMERATION_LIMIT:
        best, witness = -1, None
        kk = k % N
        for table in order_dividing_four_permutations(N):
            count = sum(1 for x in range(N) if table[(x + 1) % N] == kk * table[x] % N)
            if count > best or (count == best and table < witness):
                best, witness = count, table
        logger.info(f"Oracle at N={N}, k={k}: maximum {best} by full enumeration")
        return best, CycleFunction(N, k, witness)
    if N > cap:
        raise CapExceeded(f"modulus {N} exceeds the oracle cap {cap}", size=N)
    if budget is None and node_budget is None:
        node_budget = ORACLE_NODE_BUDGET
    deadline = time.monotonic() + budget if budget else None
    engine = BranchAndBound(N, k, node_budget=node_budget, deadline=deadline)
    if not engine.run():
        raise BudgetExceeded(f"oracle at N={N}, k={k} stopped after {engine.nodes} nodes "
                             f"without exhausting the search (best so far {engine.best})",
                             best=engine.best)
    logger.info(f"Oracle at N={N}, k={k}: maximum {engine.best} by branch and bound "
                f"({engine.nodes} nodes)")
    return engine.best, CycleFunction(N, k, engine.best_table)


def _preferred_candidates(N: int, k: int, raw: Optional[Sequence[int]] = None):
    def candidates(x: int, f: List[int]) -> List[int]:
        first = []
        if raw is not None:
            first.append(raw[x])
        if x >= 1:
            first.append(k * f[x - 1] % N)
        return first + [y for y in range(N) if y not in first]
    return candidates


def _random_block_table(rng: random.Random, N: int, k: int, max_blocks: int) -> List[int]:
    blocks = rng.randint(1, max(1, min(max_blocks, N)))
    cuts = sorted(rng.sample(range(1, N), blocks - 1)) if blocks > 1 else []
    bounds = [0] + cuts + [N]
    table = []
    for j in range(blocks):
        c = rng.randrange(N)
        for x in range(bounds[j], bounds[j + 1]):
            table.append(c * pow(k, x, N) % N)
    return table


def search_best(modulus: int, k: int, strategy: str = 'backtrack', budget: Optional[float] = 60.0,
                node_budget: Optional[int] = None, seed: int = 0,
                max_blocks: int = 4, max_restarts: int = 5_000) -> SearchResult:
    """Best f found by ``strategy`` within the node and wall-clock budgets.

    A result flagged ``budget_exhausted`` is the best found so far.
    BudgetExceeded is raised only when no admissible f was found at all.
    """
    if strategy not in STRATEGIES:
        raise ConfigError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    check_multiplier(modulus, k)
    N = modulus
    started = time.monotonic()
    deadline = started + budget if budget else None

    if strategy == 'exhaustive':
        engine = BranchAndBound(N, k, node_budget=node_budget, deadline=deadline)
        complete = engine.run()
        nodes, table, restarts, discarded = engine.nodes, engine.best_table, 0, 0
    elif strategy == 'backtrack':
        if node_budget is None:
            node_budget = DEFAULT_NODE_BUDGET
        engine = BranchAndBound(N, k, _preferred_candidates(N, k % N), node_budget, deadline)
        complete = engine.run()
        nodes, table, restarts, discarded = engine.nodes, engine.best_table, 0, 0
    else:
        if node_budget is None:
            node_budget = DEFAULT_NODE_BUDGET
        rng = random.Random(seed)
        nodes = restarts = discarded = 0
        best, table = -1, None
        while (nodes < node_budget and restarts < max_restarts
               and (deadline is None or time.monotonic() < deadline)):
            restarts += 1
            raw = _random_block_table(rng, N, k % N, max_blocks)
            candidate = CycleFunction(N, k, raw)
            report = verify(candidate)
            if report.is_bijection and report.four_periodic:
                if report.match_count > best:
                    best, table = report.match_count, candidate.table
                continue
            discarded += 1
            repair = BranchAndBound(N, k, _preferred_candidates(N, k % N, raw),
                                    min(REPAIR_NODE_BUDGET, node_budget - nodes), deadline, best)
            repair.run()
            nodes += repair.nodes
            if repair.best_table is not None and repair.best > best:
                best, table = repair.best, repair.best_table
        complete = False

    elapsed = time.monotonic() - started
    if table is None:
        raise BudgetExceeded(f"{strategy} search at N={N} found no admissible f within budget")
    f, report = _verified(N, k, table)
    exhausted = not complete and strategy != 'block_ansatz'
    if exhausted:
        logger.warning(f"{strategy} search at N={N} stopped on its budget after {nodes} nodes; "
                       f"reporting the best found")
    logger.info(f"{strategy} search at N={N}, k={k}: match_count={report.match_count} "
                f"breakpoints={report.breakpoints} nodes={nodes}")
    return SearchResult(f, report, strategy, nodes, complete, exhausted, restarts, discarded, elapsed)
