#!/usr/bin/env python3

# Before running these tests, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# pip install -r requirements/test.txt

import json
import tempfile
import unittest
from pathlib import Path

import pytest

from src.higman_quotients.context import HigmanContext
from src.higman_quotients.reporting.report import RunReport
from src.higman_quotients.selftest import SelfTest, SuiteSizes


class TestSuiteSizes(unittest.TestCase):

    def test_quick_is_smaller(self):
        full, quick = SuiteSizes(), SuiteSizes.quick()
        self.assertLess(quick.linearity, full.linearity)
        self.assertLess(quick.confluence_degree, full.confluence_degree)
        self.assertFalse(quick.large_factorization)

    def test_strategies_per_sample(self):
        self.assertEqual(SuiteSizes().strategies, 100)
        self.assertEqual(SuiteSizes.quick().strategies, 100)


class TestSingleChecks(unittest.TestCase):

    def setUp(self):
        self.suite = SelfTest(HigmanContext(3, 2, 4), seed=1, quick=True, node_budget=20_000)

    def test_relator_soundness(self):
        result = self.suite.relator_soundness()
        self.assertTrue(result.passed)
        self.assertEqual(len(result.details), 5)

    def test_negative_control(self):
        result = self.suite.negative_control()
        self.assertTrue(result.passed)
        self.assertFalse(result.details['corrupted_relcheck'])

    def test_configured_context(self):
        self.assertTrue(self.suite.configured_context().passed)

    def test_rule_systems_are_shared(self):
        self.assertIs(self.suite.rules(3, 2, 4), self.suite.rules(3, 2, 4))

    def test_seeded_generators(self):
        self.assertEqual(self.suite.rng(5).random(), SelfTest(HigmanContext(3, 2, 4), seed=1).rng(5).random())


@pytest.mark.slow
class TestQuickSuite(unittest.TestCase):

    def test_quick_run_passes_and_pins(self):
        with tempfile.TemporaryDirectory() as tmp:
            pins = Path(tmp) / 'pins.json'
            report = RunReport('selftest', {}, seed=0, include_timings=False)
            SelfTest(HigmanContext(3, 2, 4), quick=True, pins=str(pins), node_budget=20_000).run(report)
            self.assertTrue(report.ok, msg=json.dumps(report.results, indent=2, default=str))
            self.assertEqual(report.results['passed'], report.results['total'])
            self.assertEqual(report.counters['descent_violations'], 0)
            self.assertIn('expmap.oracle.9.4', json.loads(pins.read_text()))

            again = RunReport('selftest', {}, seed=0, include_timings=False)
            SelfTest(HigmanContext(3, 2, 4), quick=True, pins=str(pins), node_budget=20_000).run(again)
            self.assertTrue(again.ok)
            reproduced = again.results['expmap']['details']['pins_reproduced']
            self.assertTrue(reproduced['oracle_9_4'])
            self.assertEqual(again.results['factorization'], report.results['factorization'])


if __name__ == '__main__':
    unittest.main()
