#!/usr/bin/env python3

# Before running these tests, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# pip install -r requirements/test.txt

import unittest

from src.higman_quotients.algebra.grammar import (format_poly, format_word, parse_letters,
                                                  parse_poly, parse_word)
from src.higman_quotients.algebra.ncpoly import PolyRing
from src.higman_quotients.algebra.words import commutator
from src.higman_quotients.algebra.zmod import Modulus
from src.higman_quotients.exceptions import ParseError

RING = PolyRing.create(Modulus(3, 2), 4)


class TestPolyGrammar(unittest.TestCase):

    def test_print_order_is_lexicographic(self):
        text = "4*x0.x1 + x1 + 6*x1.x1 + 3*x1.x1.x1"
        f = parse_poly(text, RING)
        self.assertEqual(str(f), text)
        self.assertEqual(f.coeff((1, 1, 1)), 3)

    def test_constant_first(self):
        f = parse_poly("x2 + 5", RING)
        self.assertEqual(format_poly(f), "5 + x2")

    def test_zero(self):
        self.assertEqual(str(RING.zero()), "0")
        self.assertTrue(parse_poly("x0 - x0", RING).is_zero())

    def test_signs_reduce_mod_pn(self):
        f = parse_poly("x1.x0 - x0.x1", RING)
        self.assertEqual(f.coeff((1, 0)), 1)
        self.assertEqual(f.coeff((0, 1)), 8)
        self.assertEqual(parse_poly("-2", RING).coeff(()), 7)

    def test_whitespace_ignored(self):
        self.assertEqual(parse_poly(" 2 * x0 . x3 ", RING), RING.monomial((0, 3), 2))

    def test_errors(self):
        for bad in ["", "x9", "y0", "2*", "x0..x1", "3x0"]:
            with self.subTest(text=bad):
                with self.assertRaises(ParseError):
                    parse_poly(bad, RING)


class TestWordGrammar(unittest.TestCase):

    def test_format(self):
        self.assertEqual(format_word([]), "1")
        self.assertEqual(format_word([(1, 3), (0, -1)]), "a1^3, a0^-1")

    def test_letters(self):
        self.assertEqual(parse_word("a1^3, a0^-1"), [(1, 3), (0, -1)])
        self.assertEqual(parse_word("a2"), [(2, 1)])
        self.assertEqual(parse_word("1"), [])
        self.assertEqual(parse_word(""), [])

    def test_commutator_and_groups(self):
        self.assertEqual(parse_word("[a0,a1]"), commutator([(0, 1)], [(1, 1)]))
        self.assertEqual(parse_word("[a0,a1]"), [(0, -1), (1, -1), (0, 1), (1, 1)])
        self.assertEqual(parse_word("(a0, a1)^2"), [(0, 1), (1, 1), (0, 1), (1, 1)])
        self.assertEqual(parse_word("[[a0,a1],a1]"),
                         commutator(commutator([(0, 1)], [(1, 1)]), [(1, 1)]))

    def test_reduce(self):
        self.assertEqual(parse_word("a0, a0^-1, a1", reduce=True), [(1, 1)])

    def test_generator_range(self):
        with self.assertRaises(ParseError):
            parse_word("a4")
        self.assertEqual(parse_word("a4", ngens=5), [(4, 1)])

    def test_errors(self):
        for bad in ["b0", "[a0 a1]", "(a0", "a0^", "a0,,a1", "a0)"]:
            with self.subTest(text=bad):
                with self.assertRaises(ParseError):
                    parse_word(bad)

    def test_parse_letters(self):
        self.assertEqual(parse_letters("a0^2, a3"), [(0, 2), (3, 1)])
        with self.assertRaises(ParseError):
            parse_letters("[a0,a1]")


if __name__ == '__main__':
    unittest.main()
