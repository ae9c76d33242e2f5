#!/usr/bin/env python3

# Before running these tests, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# pip install -r requirements/test.txt

import unittest
from pathlib import Path

from src.higman_quotients.expmap.cycle_function import verify
from src.higman_quotients.expmap.search import DEFAULT_NODE_BUDGET, brute_oracle, search_best
from src.higman_quotients.reporting.regression import RegressionStore

PINS = Path(__file__).resolve().parents[2] / 'config' / 'regression_pins.json'


class TestShippedPins(unittest.TestCase):

    def setUp(self):
        self.assertTrue(PINS.exists(), f"{PINS} is missing")
        self.store = RegressionStore(PINS)

    def test_pinned_values(self):
        self.assertEqual(self.store.get('expmap.oracle.9.4'), [4, 4])
        self.assertEqual(self.store.get('expmap.oracle.9.7'), [4, 4])
        self.assertEqual(self.store.get('expmap.backtrack.27.4.nodes200000'), 17)

    def test_oracle_at_nine_reproduces_pins(self):
        for k in (4, 7):
            with self.subTest(k=k):
                best, witness = brute_oracle(9, k)
                report = verify(witness)
                self.assertEqual([best, report.breakpoints], self.store.get(f'expmap.oracle.9.{k}'))
                self.assertFalse(self.store.check_or_pin(f'expmap.oracle.9.{k}',
                                                         [report.match_count, report.breakpoints]))

    def test_oracle_witness_at_nine(self):
        _, witness = brute_oracle(9, 4)
        self.assertEqual(witness.table, (0, 1, 4, 7, 3, 6, 5, 2, 8))

    def test_backtrack_at_twenty_seven_reproduces_pin(self):
        self.assertEqual(DEFAULT_NODE_BUDGET, 200_000)
        result = search_best(27, 4, 'backtrack', budget=None, node_budget=DEFAULT_NODE_BUDGET)
        self.assertFalse(result.complete)
        self.assertTrue(result.report.is_bijection and result.report.four_periodic)
        self.assertEqual(result.report.match_count,
                         self.store.get(f'expmap.backtrack.27.4.nodes{DEFAULT_NODE_BUDGET}'))
        self.assertEqual(result.report.breakpoints, 9)


if __name__ == '__main__':
    unittest.main()
