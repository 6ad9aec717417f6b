import random
from fractions import Fraction
from unittest import TestCase

from knotforge.algebra.laurent import LaurentPoly, gcd_poly, coprime, factor_rational, squarefree_part, format_rational


class TestLaurentPoly(TestCase):
    def setUp(self) -> None:
        self.delta = LaurentPoly.parse("2t^2-5t+2")
        self.trefoil = LaurentPoly.parse("t^2-t+1")

    def test_parse_and_str(self):
        self.assertEqual("2t^2-5t+2", str(self.delta))
        self.assertEqual("t^2-t+1", str(self.trefoil))
        self.assertEqual("t-3+t^-1", str(LaurentPoly.parse("t^-1 - 3 + t")))
        self.assertEqual(LaurentPoly({2: Fraction(1, 2)}), LaurentPoly.parse("(1/2)t^2"))
        self.assertEqual("0", str(LaurentPoly()))

    def test_parse_rejects_garbage(self):
        with self.assertRaises(ValueError):
            LaurentPoly.parse("")
        with self.assertRaises(ValueError):
            LaurentPoly.parse("2x^2")

    def test_arithmetic(self):
        t = LaurentPoly.monomial()
        self.assertEqual(self.delta, (2 * t - 1) * (t - 2))
        self.assertEqual(LaurentPoly.parse("t^4-2t^3+3t^2-2t+1"), self.trefoil ** 2)
        self.assertEqual(LaurentPoly.constant(0), self.delta - self.delta)
        self.assertEqual(Fraction(0), self.delta.evaluate(2))
        self.assertEqual(Fraction(9), self.delta(-1))

    def test_degree(self):
        self.assertEqual(2, self.delta.degree)
        self.assertEqual(2, LaurentPoly.parse("t^-1 - 3 + t").span)
        self.assertEqual(Fraction(2), self.delta.leading_coefficient)
        self.assertTrue(LaurentPoly.parse("-3t^5").is_unit())
        self.assertFalse(LaurentPoly.parse("t^5+1").is_unit())

    def test_canonical(self):
        f = LaurentPoly.parse("-2t^3+5t^2-2t")
        self.assertEqual(self.delta, f.canonical())
        self.assertEqual(self.delta, self.delta.reciprocal())
        self.assertTrue(self.delta.is_reciprocal())
        self.assertFalse(LaurentPoly.parse("t-2").is_reciprocal())
        self.assertEqual(LaurentPoly.parse("2t-1"), LaurentPoly.parse("t-2").reciprocal())

    def test_primitive_and_monic(self):
        f = LaurentPoly.parse("(1/2)t^2 - (5/4)t + (1/2)")
        self.assertEqual(self.delta, f.primitive())
        self.assertEqual(LaurentPoly.parse("t^2-(5/2)t+1"), self.delta.monic())

    def test_exact_div(self):
        self.assertEqual(LaurentPoly.parse("2t-1"), self.delta.exact_div(LaurentPoly.parse("t-2")))
        self.assertIsNone(self.delta.exact_div(self.trefoil))
        self.assertEqual(LaurentPoly.parse("2t-1").shift(-1), self.delta.shift(-1).exact_div(LaurentPoly.parse("t-2")))
        with self.assertRaises(ZeroDivisionError):
            self.delta.exact_div(LaurentPoly())

    def test_json(self):
        self.assertEqual(self.delta, LaurentPoly.from_json(self.delta.to_json()))
        self.assertEqual("5/3", format_rational(Fraction(5, 3)))


class TestFactorization(TestCase):
    def test_gcd(self):
        delta = LaurentPoly.parse("2t^2-5t+2")
        self.assertEqual(LaurentPoly.parse("t-2"), gcd_poly(delta, LaurentPoly.parse("t^2-4")))
        self.assertTrue(coprime(delta, LaurentPoly.parse("t^2-t+1")))
        self.assertTrue(coprime(delta, LaurentPoly.parse("t^2-3t+1")))
        self.assertFalse(coprime(delta, delta))

    def test_factor(self):
        factorization = factor_rational(LaurentPoly.parse("2t^2-5t+2"))
        self.assertEqual({LaurentPoly.parse("t-2"), LaurentPoly.parse("2t-1")}, {f for f, _ in factorization})
        self.assertTrue(factorization.is_squarefree())
        self.assertEqual(LaurentPoly.parse("2t^2-5t+2"), factorization.expand())

    def test_repeated_factor(self):
        f = LaurentPoly.parse("t^2-t+1") ** 2 * LaurentPoly.parse("t-2")
        factorization = factor_rational(f)
        self.assertFalse(factorization.is_squarefree())
        self.assertEqual(2, factorization.as_dict()[LaurentPoly.parse("t^2-t+1")])
        self.assertEqual(f, factorization.expand())
        self.assertEqual(LaurentPoly.parse("t^2-t+1") * LaurentPoly.parse("t-2"), squarefree_part(f))

    def test_negative_leading(self):
        f = LaurentPoly.parse("-t^3+t^2")
        self.assertEqual(f, factor_rational(f).expand())

    def test_random_products(self):
        rng = random.Random(7)

        def piece():
            degree = rng.randint(1, 3)
            coefficients = [rng.choice([-3, -2, -1, 1, 2, 3])]
            coefficients += [rng.randint(-4, 4) for _ in range(degree - 1)]
            coefficients.append(rng.choice([-3, -2, -1, 1, 2, 3]))
            return LaurentPoly.from_coefficients(coefficients)

        for _ in range(250):
            f = LaurentPoly.monomial(Fraction(rng.choice([-6, -1, 1, 2, 5]), rng.randint(1, 4)), rng.randint(-3, 3))
            for _ in range(rng.randint(1, 3)):
                f = f * piece()
            factorization = factor_rational(f)
            self.assertEqual(f, factorization.expand(), str(f))
            for factor, multiplicity in factorization:
                self.assertGreaterEqual(multiplicity, 1)
                self.assertTrue(factor.to_poly().is_irreducible, str(factor))
