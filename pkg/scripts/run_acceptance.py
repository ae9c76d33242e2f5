#!/usr/bin/env python3

# Before running this script, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# (and dev.txt/test.txt as needed)

import argparse
import json
import os
import sys
from contextlib import redirect_stdout
from datetime import datetime
from io import StringIO
from pathlib import Path

# Add src directory to path to import higman_quotients
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))
from higman_quotients.cli import main as cli_main
from higman_quotients.selftest import ACCEPTANCE_CONFIGS
from higman_quotients.utils.logging_config import get_logger, setup_logging

logger = get_logger(__name__)


class AcceptanceRunner:
    """Runs relcheck, zs-check and an oracle/search per configuration and saves every report."""

    def __init__(self, output_dir, seed=0, node_budget=200_000):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.seed = seed
        self.node_budget = node_budget
        self.timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.summary = []

    def run(self, name, argv):
        out_file = self.output_dir / f'{name}_{self.timestamp}.json'
        buffer = StringIO()
        with redirect_stdout(buffer):
            code = cli_main(argv + ['--format', 'structured', '--seed', str(self.seed),
                                    '--out', str(out_file)])
        self.summary.append({'run': name, 'exit_code': code, 'report': out_file.name})
        level = logger.info if code == 0 else logger.error
        level(f"{name}: exit code {code}")
        return code

    def run_config(self, p, n, k):
        tag = f'p{p}_n{n}_k{k}'
        flags = ['--p', str(p), '--n', str(n), '--k', str(k)]
        self.run(f'relator_{tag}', ['relator'] + flags)
        self.run(f'relcheck_{tag}', ['gamma', 'relcheck'] + flags)
        if p ** n <= 27:
            self.run(f'zs_check_{tag}', ['gamma', 'zs-check'] + flags)

    def run_expmap(self, k=4):
        self.run(f'oracle_9_{k}', ['expmap', 'oracle', '--modulus', '9', '--k', str(k)])
        self.run(f'backtrack_27_{k}', ['expmap', 'search', '--modulus', '27', '--k', str(k),
                                       '--node-budget', str(self.node_budget)])

    def save_summary(self):
        path = self.output_dir / f'summary_{self.timestamp}.json'
        with open(path, 'w') as f:
            json.dump(self.summary, f, indent=2)
        return path


def main():
    parser = argparse.ArgumentParser(description='Run the acceptance configurations and save all reports')
    parser.add_argument('--output-dir', default=os.getenv('HQ_RESULTS_DIR', 'results'),
                        help='directory for the JSON reports')
    parser.add_argument('--seed', type=int, default=int(os.getenv('HQ_SEED', '0')))
    parser.add_argument('--node-budget', type=int, default=200_000)
    parser.add_argument('--skip-expmap', action='store_true')
    args = parser.parse_args()

    runner = AcceptanceRunner(args.output_dir, args.seed, args.node_budget)
    for p, n, k in ACCEPTANCE_CONFIGS:
        runner.run_config(p, n, k)
    if not args.skip_expmap:
        runner.run_expmap()
    # cli.main resets logging on every call
    setup_logging()
    path = runner.save_summary()
    failed = [entry for entry in runner.summary if entry['exit_code'] != 0]
    logger.info(f"{len(runner.summary) - len(failed)}/{len(runner.summary)} runs succeeded; summary in {path}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
