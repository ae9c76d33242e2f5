#!/usr/bin/env python3
"""Command-line front end.

Every command prints one report (human ``key: value`` lines or JSON) on
stdout and returns an exit code: 0 ok, 1 a checked property is false,
2 usage or configuration error, 3 a size cap or budget was hit.
"""

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .algebra.grammar import format_word, parse_poly, parse_word
from .algebra.magnus import lowest_valuation, magnus_expand, p_class
from .context import HigmanContext, validate
from .exceptions import (BudgetExceeded, CapExceeded, ConfigError, IterationCapExceeded,
                         ParseError, RegressionMismatch, ShapeMismatch)
from .expmap.cycle_function import CycleFunction, verify
from .expmap.profile import export_profile, profile, summarize
from .expmap.search import ORACLE_CAP, STRATEGIES, brute_oracle, search_best
from .groups.gamma import (GammaGroup, bs_check, check_relators, jacobson_check,
                           rotation_check, zs_check)
from .groups.zappa import HTilde
from .reporting.regression import RegressionStore
from .reporting.report import RunReport
from .rewriting.confluence import UNIQUENESS_STRATEGIES, check_confluence
from .rewriting.relators import SYSTEMS, build_relators
from .rewriting.rules import RuleSystem
from .selftest import SelfTest
from .utils.logging_config import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

ENV_VARS = {'p': 'HQ_P', 'n': 'HQ_N', 'k': 'HQ_K', 'seed': 'HQ_SEED'}


@dataclass
class RunConfig:
    """Resolved run parameters: defaults < --config file < HQ_* environment < flags."""

    p: int = 3
    n: int = 2
    k: int = 4
    seed: int = 0
    format: str = 'human'
    cap: int = 100_000
    budget: float = 60.0
    node_budget: Optional[int] = None
    log_level: str = 'INFO'
    log_dir: Optional[str] = None
    no_timings: bool = False
    pins: Optional[str] = None

    def context(self) -> HigmanContext:
        return validate(self.p, self.n, self.k)

    def echo(self) -> Dict[str, Any]:
        """The part of the configuration that can change results."""
        data = asdict(self)
        for key in ('log_level', 'log_dir', 'format', 'no_timings'):
            data.pop(key)
        return data

    def update(self, values: Dict[str, Any], source: str) -> None:
        known = {f.name: f.type for f in fields(self)}
        for key, value in values.items():
            if key not in known:
                raise ConfigError(f"{source}: unknown setting {key!r}")
            if value is None:
                continue
            if key == 'budget':
                value = parse_budget(value)
            elif key in ('p', 'n', 'k', 'seed', 'cap', 'node_budget'):
                try:
                    value = int(value)
                except (TypeError, ValueError):
                    raise ConfigError(f"{source}: {key} must be an integer, got {value!r}")
            setattr(self, key, value)
        if self.format not in ('human', 'structured'):
            raise ConfigError(f"{source}: format must be 'human' or 'structured', got {self.format!r}")

    @classmethod
    def from_file(cls, path: str) -> Dict[str, Any]:
        try:
            with open(path) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}")
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return data


def parse_budget(value: Any) -> float:
    """Seconds from 60, 2.5, "10s", "2m" or "1h"."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        seconds = float(value)
    else:
        match = re.fullmatch(r'\s*(\d+(?:\.\d+)?)\s*([smh]?)\s*', str(value))
        if not match:
            raise ConfigError(f"bad budget {value!r}; use e.g. 60, 10s, 2m")
        seconds = float(match.group(1)) * {'': 1, 's': 1, 'm': 60, 'h': 3600}[match.group(2)]
    if seconds <= 0:
        raise ConfigError(f"budget must be positive, got {value!r}")
    return seconds


def resolve_config(args: argparse.Namespace, environ: Optional[Dict[str, str]] = None) -> RunConfig:
    environ = os.environ if environ is None else environ
    config = RunConfig()
    if getattr(args, 'config', None):
        config.update(RunConfig.from_file(args.config), args.config)
    config.update({key: environ.get(var) for key, var in ENV_VARS.items()}, 'environment')
    flags = {f.name: getattr(args, f.name, None) for f in fields(RunConfig)}
    if not flags['no_timings']:
        flags['no_timings'] = None
    config.update(flags, 'command line')
    return config


# -- commands ----------------------------------------------------------------

def cmd_relator(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    relators = build_relators(config.context(), args.system)
    report.results.update(relators.to_dict())


def _rules(config: RunConfig, args: argparse.Namespace) -> RuleSystem:
    return RuleSystem(build_relators(config.context(), args.system), args.direction)


def cmd_nf(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    rules = _rules(config, args)
    poly = parse_poly(args.poly, rules.ring)
    with report.phase('reduce'):
        result = rules.reduce(poly, args.strategy, seed=config.seed, trace=args.trace)
    memoized = rules.normal_form(poly)
    report.results.update({
        'input': str(poly),
        'normal_form': str(result.normal_form),
        'steps': result.steps,
        'engines_agree': memoized == result.normal_form,
    })
    if args.trace:
        report.results['trace'] = [step.to_dict() for step in result.trace]
    report.count('rewrite_steps', rules.stats['steps'])
    report.count('descent_violations', rules.stats['descent_violations'])
    if memoized != result.normal_form:
        report.fail()


def _generator_list(text: str, ngens: int) -> List[int]:
    try:
        gens = [int(t) for t in text.split(',') if t.strip()]
    except ValueError:
        raise ParseError(f"bad generator list {text!r}; use e.g. 0,2")
    bad = [g for g in gens if not 0 <= g < ngens]
    if bad or not gens:
        raise ParseError(f"generator indices must lie in [0, {ngens}), got {text!r}")
    return gens


def cmd_gamma(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    group = GammaGroup(config.context(), args.system, args.direction)
    action = args.action
    if action == 'enumerate':
        gens = _generator_list(args.gens, group.ngens) if args.gens else list(range(group.ngens))
        with report.phase('enumerate'):
            elements = group.enumerate([group.generator(i) for i in gens], config.cap)
        report.results.update({'generators': gens, 'size': len(elements)})
        if args.dump:
            path = Path(args.dump)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(''.join(f"{x}\n" for x in elements))
            report.results['dump'] = str(path)
    elif action == 'zs-check':
        with report.phase('zs_check'):
            zs = zs_check(group, config.cap)
        report.results.update(zs.to_dict())
        if not (zs.intersection_trivial and zs.unique_factorization):
            report.fail()
    elif action == 'jacobson-check':
        with report.phase('jacobson_check'):
            jac = jacobson_check(group, config.cap)
        report.results.update(jac.to_dict())
        if not jac.equal:
            report.fail()
    elif action == 'relcheck':
        holds = check_relators(group)
        report.results['relations_hold'] = holds
        if not holds:
            report.fail()
    elif action == 'bs-check':
        bs = bs_check(group, args.index, config.cap)
        report.results.update(bs.to_dict())
        if not bs.relation_holds:
            report.fail()
    elif action == 'rotation-check':
        rot = rotation_check(group, cap=config.cap)
        report.results.update(rot.to_dict())
        if not (rot.relators_cycle and rot.is_permutation):
            report.fail()
    report.count('rewrite_steps', group.rules.stats['steps'])
    report.count('descent_violations', group.rules.stats['descent_violations'])


def cmd_expmap(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    modulus = args.modulus
    k = config.k
    if args.action == 'oracle':
        with report.phase('oracle'):
            best, witness = brute_oracle(modulus, k, args.oracle_cap, config.budget, config.node_budget)
        check = verify(witness)
        report.results.update({'modulus': modulus, 'k': k, 'max_match': best,
                               'table': list(witness.table), 'report': check.to_dict()})
        f = witness
        if config.pins:
            RegressionStore(config.pins).check_or_pin(
                f'expmap.oracle.{modulus}.{k}', [check.match_count, check.breakpoints])
    elif args.action == 'search':
        result = search_best(modulus, k, args.strategy, config.budget, config.node_budget, config.seed)
        report.results.update(result.to_dict(timings=report.include_timings))
        f = result.function
        # only results that do not depend on machine speed are pinned
        stopped_on_nodes = config.node_budget is not None and result.nodes > config.node_budget
        if config.pins and args.strategy != 'block_ansatz' and (result.complete or stopped_on_nodes):
            key = f'expmap.{args.strategy}.{modulus}.{k}'
            if not result.complete:
                key += f'.nodes{config.node_budget}'
            RegressionStore(config.pins).check_or_pin(key, result.report.match_count)
    else:
        if not args.csv_in:
            raise ConfigError("expmap verify needs --csv-in PATH")
        f = CycleFunction.from_csv(args.csv_in, k)
        check = verify(f)
        report.results.update({'modulus': f.modulus, 'k': k, 'report': check.to_dict()})
        if not (check.is_bijection and check.four_periodic):
            report.fail()
    if args.csv_out:
        f.to_csv(args.csv_out)
        report.results['csv'] = args.csv_out
    if args.profile_out:
        df = profile(f)
        export_profile(df, args.profile_out)
        report.results['profile'] = summarize(df)


def cmd_selftest(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    SelfTest(config.context(), config.seed, quick=args.quick, pins=config.pins, cap=config.cap,
             node_budget=config.node_budget or 200_000, budget=config.budget).run(report)


def cmd_word(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    context = config.context()
    htilde = HTilde(context)
    x = htilde.normalize(parse_word(args.word))
    if args.times:
        x = x * htilde.normalize(parse_word(args.times))
    if args.power is not None:
        x = htilde.pow(x, args.power)
    report.results.update({'normal_form': str(x), 'even': format_word(x.even), 'odd': format_word(x.odd)})
    if args.image:
        report.results['image'] = str(htilde.hom_to_gamma(x, GammaGroup(context)).nf)


def cmd_magnus(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    word = parse_word(args.word, ngens=args.ngens)
    scale = config.p if args.scaled else 1
    expansion = magnus_expand(word, args.degree, scale)
    report.results.update({'word': format_word(word), 'degree': args.degree, 'scale': scale,
                           'expansion': str(expansion)})
    if args.scaled:
        report.results['lowest_valuation'] = {str(d): v for d, v in
                                              sorted(lowest_valuation(expansion, config.p).items())}


def cmd_pclass(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    word = parse_word(args.word, ngens=args.ngens)
    report.results.update({'word': format_word(word), 'p': config.p, 'nmax': args.nmax,
                           'p_class': p_class(word, config.p, args.nmax)})


def cmd_confluence(config: RunConfig, args: argparse.Namespace, report: RunReport) -> None:
    rules = _rules(config, args)
    with report.phase('confluence'):
        result = check_confluence(rules, args.degree, args.samples, args.max_degree,
                                  config.seed, args.strategies, args.workers)
    report.results.update(result.to_dict())
    report.count('rewrite_steps', result.steps)
    report.count('descent_violations', result.descent_violations)
    if not result.confluent:
        report.fail()


COMMANDS: Dict[str, Callable[[RunConfig, argparse.Namespace, RunReport], None]] = {
    'relator': cmd_relator,
    'nf': cmd_nf,
    'gamma': cmd_gamma,
    'expmap': cmd_expmap,
    'selftest': cmd_selftest,
    'word': cmd_word,
    'magnus': cmd_magnus,
    'pclass': cmd_pclass,
    'confluence': cmd_confluence,
}


# -- parser ------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON run configuration (see config/)')
    common.add_argument('--p', type=int, help='prime p (default 3, env HQ_P)')
    common.add_argument('--n', type=int, help='nilpotency bound n (default 2, env HQ_N)')
    common.add_argument('--k', type=int, help='exponent k with p | k - 1 (default 4, env HQ_K)')
    common.add_argument('--seed', type=int, help='seed for randomized suites (default 0, env HQ_SEED)')
    common.add_argument('--format', choices=['human', 'structured'], help='report format (default human)')
    common.add_argument('--cap', type=int, help='size cap for enumerations and oracles (default 100000)')
    common.add_argument('--budget', help='wall-clock budget for searches, e.g. 60, 10s, 2m')
    common.add_argument('--node-budget', dest='node_budget', type=int,
                        help='search node budget; makes search results machine independent')
    common.add_argument('--log-level', dest='log_level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    common.add_argument('--log-dir', dest='log_dir', help='also write a timestamped log file here')
    common.add_argument('--no-timings', dest='no_timings', action='store_true',
                        help='leave timings and resources out of the report')
    common.add_argument('--pins', help='JSON file of pinned regression constants')
    common.add_argument('--out', help='also write the structured report to this path')
    return common


def _add_rewriting_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--system', choices=sorted(SYSTEMS), default='H',
                        help='H (four relators), A0 or A01 (sub-systems)')
    parser.add_argument('--direction', choices=['left', 'right'], default='left',
                        help='which parity is pushed to the left in normal forms')


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='higman-quotients',
        description='Finite p-quotients of the Higman group: relators, normal forms, '
                    'group arithmetic and the almost-exponential bijection search')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('relator', parents=[common], help='print the relators g_i and Q0')
    p.add_argument('--system', choices=sorted(SYSTEMS), default='H')

    p = sub.add_parser('nf', parents=[common], help='normal form of a polynomial')
    p.add_argument('poly', help='polynomial, e.g. "x1.x0" or "2*x0.x1 + 3"')
    _add_rewriting_options(p)
    p.add_argument('--strategy', choices=['canonical', 'random'], default='canonical')
    p.add_argument('--trace', action='store_true', help='include the measure trace of every step')

    gamma = sub.add_parser('gamma', help='group computations in Gamma')
    actions = gamma.add_subparsers(dest='action', required=True)
    for name, text in [('enumerate', 'BFS enumeration of a subgroup'),
                       ('zs-check', 'factorization <a0,a2> * <a1,a3>'),
                       ('jacobson-check', '|<a0,a2>| against the free two-generator quotient'),
                       ('relcheck', 'a_{i+1} a_i = a_i a_{i+1}^k for every i'),
                       ('bs-check', 'size of <a_i, a_{i+1}> against p^(2n)'),
                       ('rotation-check', 'x_i -> x_{i+1} permutes the group')]:
        p = actions.add_parser(name, parents=[common], help=text)
        _add_rewriting_options(p)
        if name == 'enumerate':
            p.add_argument('--gens', help='comma-separated generator indices (default: all)')
            p.add_argument('--dump', help='write the elements, one normal form per line')
        if name == 'bs-check':
            p.add_argument('--index', type=int, default=0, help='i of the pair (a_i, a_{i+1})')

    expmap = sub.add_parser('expmap', help='bijections f with f^4 = id and f(x+1) = k f(x)')
    actions = expmap.add_subparsers(dest='action', required=True)
    for name in ('search', 'verify', 'oracle'):
        p = actions.add_parser(name, parents=[common])
        p.add_argument('--modulus', type=int, default=9, help='p^m (default 9)')
        p.add_argument('--csv-out', dest='csv_out', help='write the table as CSV (x,f)')
        p.add_argument('--profile-out', dest='profile_out', help='write the a(x) profile as CSV')
        if name == 'search':
            p.add_argument('--strategy', choices=STRATEGIES, default='backtrack')
        if name == 'verify':
            p.add_argument('--csv-in', dest='csv_in', help='table to verify (columns x,f)')
        if name == 'oracle':
            p.add_argument('--oracle-cap', dest='oracle_cap', type=int, default=ORACLE_CAP,
                           help=f'largest modulus for the exact oracle (default {ORACLE_CAP})')

    p = sub.add_parser('selftest', parents=[common], help='run the acceptance suite')
    p.add_argument('--quick', action='store_true', help='smaller random samples, skip (3,4,3) factorization')

    p = sub.add_parser('word', parents=[common], help='normal forms in the word-level group')
    p.add_argument('word', help='word, e.g. "a1^2, a0" or "[a0,a1]"')
    p.add_argument('--times', help='multiply on the right by this word')
    p.add_argument('--power', type=int, help='raise the result to this power')
    p.add_argument('--image', action='store_true', help='also print the image in Gamma')

    for name, text in [('magnus', 'truncated Magnus expansion of a word'),
                       ('pclass', 'p-central class of a word')]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('word')
        p.add_argument('--ngens', type=int, default=4)
        if name == 'magnus':
            p.add_argument('--degree', type=int, default=2)
            p.add_argument('--scaled', action='store_true', help='expand with a_i -> 1 + p x_i')
        else:
            p.add_argument('--nmax', type=int, default=6)

    p = sub.add_parser('confluence', parents=[common], help='exhaustive and random confluence check')
    _add_rewriting_options(p)
    p.add_argument('--degree', type=int, default=4, help='exhaustive degree cap')
    p.add_argument('--samples', type=int, default=0, help='random monomials to test')
    p.add_argument('--max-degree', dest='max_degree', type=int, default=8)
    p.add_argument('--strategies', type=int, default=UNIQUENESS_STRATEGIES,
                   help=f'random strategies per sample (default {UNIQUENESS_STRATEGIES})')
    p.add_argument('--workers', type=int, default=1)
    return parser


def _command_name(args: argparse.Namespace) -> str:
    action = getattr(args, 'action', None)
    return f"{args.command} {action}" if action else args.command


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
    except ConfigError as exc:
        setup_logging()
        logger.error(str(exc))
        return EXIT_USAGE
    setup_logging(config.log_level, config.log_dir)

    report = RunReport(_command_name(args), config.echo(), config.seed,
                       include_timings=not config.no_timings)
    code = EXIT_OK
    try:
        if args.command != 'expmap':
            config.context()
        COMMANDS[args.command](config, args, report)
        if not report.ok:
            code = EXIT_FAILED
    except (ConfigError, ParseError) as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        report.status, code = 'error', EXIT_USAGE
        report.results['error'] = str(exc)
    except (CapExceeded, BudgetExceeded, IterationCapExceeded) as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        report.status, code = 'cap', EXIT_CAP
        report.results['error'] = str(exc)
    except (RegressionMismatch, ShapeMismatch) as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        report.status, code = 'fail', EXIT_FAILED
        report.results['error'] = str(exc)

    if code == EXIT_FAILED and report.status == 'fail' and 'error' not in report.results:
        logger.error(f"{report.command}: a checked property is false")
    if report.include_timings:
        report.capture_resources()
    print(report.render(config.format))
    if args.out:
        report.write_json(args.out)
    return code


if __name__ == '__main__':
    sys.exit(main())
