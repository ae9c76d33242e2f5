#!/usr/bin/env python3

# Before running these tests, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# pip install -r requirements/test.txt

import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from src.higman_quotients.algebra.magnus import (IntPoly, in_pcentral_term, lowest_valuation,
                                                 magnus_expand, p_class)
from src.higman_quotients.algebra.words import (commutator, concat, free_reduce, invert,
                                                left_normed, length, power)

A0, A1 = [(0, 1)], [(1, 1)]

letters = st.tuples(st.integers(min_value=0, max_value=1), st.sampled_from([-2, -1, 1, 2]))
words = st.lists(letters, min_size=1, max_size=3)


class TestWords(unittest.TestCase):

    def test_free_reduce_cascades(self):
        self.assertEqual(free_reduce([(0, 1), (1, 2), (1, -2), (0, -1)]), [])
        self.assertEqual(free_reduce([(0, 1), (0, 2), (1, 0)]), [(0, 3)])

    def test_invert_and_concat(self):
        w = [(0, 2), (1, -1)]
        self.assertEqual(invert(w), [(1, 1), (0, -2)])
        self.assertEqual(concat(w, invert(w)), [])

    def test_commutator_convention(self):
        self.assertEqual(commutator(A0, A1), [(0, -1), (1, -1), (0, 1), (1, 1)])
        self.assertEqual(left_normed(A0, A1, A1), commutator(commutator(A0, A1), A1))

    def test_power_and_length(self):
        self.assertEqual(power(A0 + A1, 2), [(0, 1), (1, 1), (0, 1), (1, 1)])
        self.assertEqual(power(A0, -3), [(0, -3)])
        self.assertEqual(length(commutator(A0, A1)), 4)


class TestMagnus(unittest.TestCase):

    def test_commutator_degree_two(self):
        expected = IntPoly(2, {(): 1, (0, 1): 1, (1, 0): -1})
        self.assertEqual(magnus_expand(commutator(A0, A1), 2), expected)
        self.assertEqual(str(expected), "1 + x0.x1 - x1.x0")

    def test_generator(self):
        self.assertEqual(magnus_expand(A0, 3), IntPoly(3, {(): 1, (0,): 1}))

    def test_inverse_series(self):
        self.assertEqual(magnus_expand([(0, -1)], 3),
                         IntPoly(3, {(): 1, (0,): -1, (0, 0): 1, (0, 0, 0): -1}))
        self.assertEqual(magnus_expand([(0, 1), (0, -1)], 4), IntPoly.one(4))

    def test_double_commutator_is_degree_three(self):
        e = magnus_expand(left_normed(A0, A1, A1), 3)
        self.assertEqual(e.lowest_degree(), 3)
        self.assertTrue(e.homogeneous(1).terms == {} and e.homogeneous(2).terms == {})
        # Lie elements have zero coefficient sum
        self.assertEqual(sum(c for _, c in e.homogeneous(3).items()), 0)

    def test_scaled_expansion(self):
        e = magnus_expand(power(A0, 3), 3, scale=3)
        self.assertEqual(e, IntPoly(3, {(): 1, (0,): 9, (0, 0): 27, (0, 0, 0): 27}))
        self.assertEqual(lowest_valuation(e, 3), {1: 2, 2: 3, 3: 3})

    def test_in_pcentral_term(self):
        e = magnus_expand(commutator(A0, A1), 3, scale=3)
        self.assertTrue(in_pcentral_term(e, 3, 2))
        self.assertFalse(in_pcentral_term(e, 3, 3))


class TestPClass(unittest.TestCase):

    def test_known_values(self):
        self.assertEqual(p_class(A0, 3), 1)
        self.assertEqual(p_class(power(A0, 3), 3), 2)
        self.assertEqual(p_class(power(A0, 9), 3), 3)
        self.assertEqual(p_class(commutator(A0, A1), 3), 2)
        self.assertEqual(p_class(left_normed(A0, A1, A1), 3), 3)

    def test_trivial_word_hits_cap(self):
        self.assertEqual(p_class([], 3, nmax=5), 5)

    def test_rejects_bad_cap(self):
        with self.assertRaises(ValueError):
            p_class(A0, 3, nmax=0)

    @given(words, words, st.sampled_from([3, 5]))
    @settings(max_examples=40, deadline=None)
    def test_filtration(self, w, v, p):
        nmax = 4
        cw, cv = p_class(w, p, nmax), p_class(v, p, nmax)
        self.assertGreaterEqual(p_class(w + v, p, nmax), min(cw, cv))
        self.assertGreaterEqual(p_class(power(w, p), p, nmax), min(cw + 1, nmax))
        self.assertGreaterEqual(p_class(commutator(w, v), p, nmax), min(cw + cv, nmax))


if __name__ == '__main__':
    unittest.main()
