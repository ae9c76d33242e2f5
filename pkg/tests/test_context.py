#!/usr/bin/env python3

# Before running these tests, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# pip install -r requirements/test.txt

import unittest

from src.higman_quotients.context import HigmanContext, validate
from src.higman_quotients.exceptions import ConfigError


class TestHigmanContext(unittest.TestCase):

    def test_valid(self):
        ctx = HigmanContext(3, 2, 4)
        self.assertEqual(ctx.pn, 9)
        self.assertEqual(ctx.to_dict(), {'p': 3, 'n': 2, 'k': 4})
        self.assertEqual(str(ctx), "(p=3, k=4, n=2)")
        self.assertFalse(ctx.is_experimental)

    def test_invalid(self):
        for p, n, k in [(4, 2, 5), (3, 0, 4), (3, 2, 5), (3, 2, 1), (5, 2, 4)]:
            with self.subTest(p=p, n=n, k=k):
                with self.assertRaises(ConfigError):
                    HigmanContext(p, n, k)

    def test_rejects_non_integers(self):
        with self.assertRaises(ConfigError):
            HigmanContext(3, 2.0, 4)
        with self.assertRaises(ConfigError):
            HigmanContext(True, 2, 4)

    def test_experimental_prime_two(self):
        with self.assertLogs('src.higman_quotients.context', level='WARNING') as logs:
            ctx = HigmanContext(2, 3, 3)
        self.assertTrue(ctx.is_experimental)
        self.assertIn("experimental", logs.output[0])

    def test_with_n(self):
        ctx = HigmanContext(5, 2, 6).with_n(3)
        self.assertEqual((ctx.p, ctx.n, ctx.k), (5, 3, 6))
        self.assertEqual(ctx.pn, 125)

    def test_equality_ignores_derived_fields(self):
        self.assertEqual(HigmanContext(3, 2, 4), HigmanContext(3, 2, 4))
        self.assertNotEqual(HigmanContext(3, 2, 4), HigmanContext(3, 3, 4))

    def test_validate(self):
        self.assertEqual(validate(3, 2, 7), HigmanContext(3, 2, 7))
        with self.assertRaises(ConfigError):
            validate(6, 2, 7)


if __name__ == '__main__':
    unittest.main()
