#!/usr/bin/env python3

# Before running these tests, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# pip install -r requirements/test.txt

import unittest
from unittest.mock import patch

from hypothesis import given
from hypothesis import strategies as st
from sympy import multiplicity

from src.higman_quotients.algebra.zmod import KExp, Modulus, Residue
from src.higman_quotients.exceptions import ConfigError, ModulusMismatch, NotAUnit


class TestModulus(unittest.TestCase):

    def test_pn(self):
        self.assertEqual(Modulus(3, 2).pn, 9)
        self.assertEqual(Modulus(5, 1).pn, 5)

    def test_rejects_non_prime_and_bad_n(self):
        with self.assertRaises(ConfigError):
            Modulus(4, 2)
        with self.assertRaises(ConfigError):
            Modulus(3, 0)

    def test_valuation(self):
        m = Modulus(3, 2)
        self.assertEqual(m.valuation(6), 1)
        self.assertEqual(m.valuation(0), 2)
        self.assertEqual(m.valuation(4), 0)
        self.assertEqual(m.valuation(9), 2)

    def test_valuation_uses_sympy_multiplicity(self):
        m = Modulus(3, 3)
        with patch('src.higman_quotients.algebra.zmod.multiplicity', wraps=multiplicity) as spy:
            values = [m.valuation(v) for v in range(1, 27)]
        self.assertEqual(values, [multiplicity(3, v) for v in range(1, 27)])
        self.assertEqual(spy.call_count, 26)
        self.assertEqual(m.valuation(-3), 1)
        self.assertEqual(m.valuation(54), 3)


class TestResidue(unittest.TestCase):

    def setUp(self):
        self.m = Modulus(3, 2)

    def r(self, v):
        return Residue(v, self.m)

    def test_arithmetic(self):
        """Sums and products wrap around mod 9"""
        self.assertEqual((self.r(4) + 7).value, 2)
        self.assertEqual((self.r(0) * self.r(5)).value, 0)
        self.assertEqual((self.r(8) + self.r(1)).value, 0)
        self.assertEqual((self.r(2) - 5).value, 6)
        self.assertEqual((-self.r(1)).value, 8)

    def test_inverse(self):
        self.assertEqual(self.r(4).inverse().value, 7)
        self.assertEqual(self.r(1).inverse().value, 1)
        with self.assertRaises(NotAUnit):
            self.r(3).inverse()

    def test_vp(self):
        self.assertEqual(self.r(6).vp(), 1)
        self.assertEqual(self.r(0).vp(), 2)
        self.assertEqual(self.r(4).vp(), 0)

    def test_mixed_moduli(self):
        with self.assertRaises(ModulusMismatch):
            self.r(1) + Residue(1, Modulus(5, 1))

    @given(st.integers(min_value=-100, max_value=100), st.integers(min_value=-100, max_value=100))
    def test_canonical_representative(self, a, b):
        s = self.r(a) * self.r(b)
        self.assertEqual(s.value, (a * b) % 9)
        self.assertTrue(0 <= s.value < 9)


class TestKExp(unittest.TestCase):

    def setUp(self):
        self.ke = KExp(4, Modulus(3, 2))

    def test_kpow(self):
        self.assertEqual(self.ke.kpow(3).value, 1)
        self.assertEqual(self.ke.kpow(0).value, 1)
        self.assertEqual(self.ke.kpow(7).value, 4)
        self.assertEqual(self.ke.kpow_inverse(1).value, 7)

    def test_korder(self):
        self.assertEqual(self.ke.korder(), 3)
        self.assertEqual(KExp(4, Modulus(3, 1)).korder(), 1)
        # 10 = 1 mod 9
        self.assertEqual(KExp(10, Modulus(3, 2)).korder(), 1)
        self.assertEqual(KExp(4, Modulus(3, 3)).korder(), 9)

    def test_requires_p_dividing_k_minus_one(self):
        with self.assertRaises(ConfigError):
            KExp(5, Modulus(3, 2))
        with self.assertRaises(ConfigError):
            KExp(1, Modulus(3, 2))

    @given(st.integers(min_value=-50, max_value=50), st.integers(min_value=-50, max_value=50))
    def test_exponent_law(self, r, s):
        self.assertEqual(self.ke.kpow(r + s), self.ke.kpow(r) * self.ke.kpow(s))


if __name__ == '__main__':
    unittest.main()
