#!/usr/bin/env python3

# Before running these tests, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# pip install -r requirements/test.txt

import unittest

from src.higman_quotients.context import HigmanContext
from src.higman_quotients.exceptions import ConfigError
from src.higman_quotients.rewriting.relators import (build_q0, build_relators, q0_coefficients,
                                                     rotate, rotation_mapping)
from src.higman_quotients.rewriting.rules import RuleSystem

CONFIGS = [(3, 2, 4), (3, 3, 4), (3, 2, 7), (5, 2, 6), (5, 2, 11)]


class TestQ0(unittest.TestCase):

    def test_exact_coefficients(self):
        self.assertEqual(q0_coefficients(4, 3), [0, -1, -6, -12, -9])

    def test_reduced(self):
        self.assertEqual(str(build_q0(4, 3, 2)), "8*x0 + 3*x0.x0 + 6*x0.x0.x0")

    def test_requires_p_dividing_k_minus_one(self):
        with self.assertRaises(ConfigError):
            q0_coefficients(5, 3)


class TestBuildRelators(unittest.TestCase):

    def setUp(self):
        self.relators = build_relators(HigmanContext(3, 2, 4))

    def test_g0_closed_form(self):
        g0 = self.relators.relator_for(0)
        self.assertEqual(str(g0), "5*x0.x1 + 8*x1 + x1.x0 + 3*x1.x1 + 6*x1.x1.x1")

    def test_normalization_exponent(self):
        self.assertEqual(self.relators.alpha, [2, 2, 2, 2])

    def test_rotation_cycles_relators(self):
        for i in range(4):
            with self.subTest(i=i):
                self.assertEqual(rotate(self.relators.relator_for(i)),
                                 self.relators.relator_for((i + 1) % 4))
        self.assertEqual(list(rotation_mapping(4)), [1, 2, 3, 0])

    def test_to_dict(self):
        data = self.relators.to_dict()
        self.assertEqual(data['system'], 'H')
        self.assertEqual(sorted(data['g']), ['g0', 'g1', 'g2', 'g3'])
        self.assertEqual(data['q0'], "8*x0 + 3*x0.x0 + 6*x0.x0.x0")

    def test_missing_relator(self):
        relators = build_relators(HigmanContext(3, 2, 4), 'A0')
        with self.assertRaises(KeyError):
            relators.relator_for(1)

    def test_unknown_system(self):
        with self.assertRaises(ConfigError):
            build_relators(HigmanContext(3, 2, 4), 'B')


class TestRelatorSoundness(unittest.TestCase):
    """Every relator reduces to zero under its own rules."""

    def test_acceptance_configs(self):
        for p, n, k in CONFIGS:
            with self.subTest(p=p, n=n, k=k):
                relators = build_relators(HigmanContext(p, n, k))
                rules = RuleSystem(relators)
                self.assertEqual(relators.alpha, [2] * 4)
                for g in relators.g:
                    self.assertTrue(rules.normal_form(g).is_zero())
                self.assertEqual(rules.stats['descent_violations'], 0)

    def test_sub_systems(self):
        ctx = HigmanContext(3, 2, 4)
        for system, nvars, count in [('A0', 2, 1), ('A01', 3, 2)]:
            with self.subTest(system=system):
                relators = build_relators(ctx, system)
                self.assertEqual(relators.nvars, nvars)
                self.assertEqual(len(relators.g), count)
                rules = RuleSystem(relators)
                self.assertTrue(all(rules.normal_form(g).is_zero() for g in relators.g))

    def test_sub_system_relators_agree_with_full_system(self):
        ctx = HigmanContext(3, 2, 4)
        full = build_relators(ctx)
        a01 = build_relators(ctx, 'A01')
        self.assertEqual(str(a01.relator_for(1)), str(full.relator_for(1)))


if __name__ == '__main__':
    unittest.main()
