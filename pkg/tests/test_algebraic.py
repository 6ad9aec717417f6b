import math
import random
from fractions import Fraction
from unittest import TestCase

import sympy
from sympy import Poly, QQ

from knotforge.algebra.cyclotomic import eval_root_of_unity
from knotforge.algebra.laurent import LaurentPoly
from knotforge.algebra.numberfield import RealAlgebraicNumber, RealField, certified_sign, S
from knotforge.algebra.realroots import isolate_roots, count_roots, sturm_sequence, refine_root
from knotforge.algebra.unitcircle import AlgebraicAngle, compact_form, cyclotomic_trace_poly, unit_circle_roots
from knotforge.config import DEFAULT_SETTINGS
from knotforge.exceptions import UncertifiedError

SQRT2 = RealAlgebraicNumber(Poly(S ** 2 - 2, S, domain=QQ), 1, 2)
PLASTIC = RealAlgebraicNumber(Poly(S ** 3 - S - 1, S, domain=QQ), 1, 2)


class TestRealRoots(TestCase):
    def test_isolate(self):
        poly = Poly(S ** 3 - S, S, domain=QQ)
        intervals = isolate_roots(poly, Fraction(-2), Fraction(2))
        self.assertEqual(3, len(intervals))
        sequence = sturm_sequence(poly)
        for lo, hi in intervals:
            self.assertEqual(1, count_roots(sequence, lo, hi))

    def test_refine(self):
        poly = Poly(S ** 2 - 2, S, domain=QQ)
        lo, hi = refine_root(poly, Fraction(1), Fraction(2), Fraction(1, 1000))
        self.assertLessEqual(hi - lo, Fraction(1, 1000))
        self.assertTrue(lo * lo < 2 <= hi * hi)


class TestRealAlgebraicNumber(TestCase):
    def test_invalid_interval(self):
        with self.assertRaises(ValueError):
            RealAlgebraicNumber(Poly(S ** 2 - 2, S, domain=QQ), 2, 3)
        with self.assertRaises(ValueError):
            RealAlgebraicNumber(Poly(S ** 2 - 1, S, domain=QQ), 0, 2)

    def test_compare(self):
        sqrt3 = RealAlgebraicNumber(Poly(S ** 2 - 3, S, domain=QQ), 1, 2)
        self.assertEqual(-1, SQRT2.compare(sqrt3))
        self.assertEqual(1, sqrt3.compare(SQRT2))
        self.assertEqual(0, SQRT2.compare(RealAlgebraicNumber(Poly(S ** 2 - 2, S, domain=QQ), 0, 3)))
        self.assertEqual(1, SQRT2.compare_rational(Fraction(7, 5)))
        self.assertEqual(-1, SQRT2.compare_rational(Fraction(3, 2)))

    def test_conjugates(self):
        conjugates = SQRT2.conjugates()
        self.assertEqual(2, len(conjugates))
        self.assertEqual(SQRT2, conjugates[1])
        self.assertEqual(-1, conjugates[0].compare_rational(0))

    def test_rational(self):
        half = RealAlgebraicNumber.from_rational(Fraction(1, 2))
        self.assertTrue(half.is_rational)
        self.assertEqual(Fraction(1, 2), half.rational)

    def test_refine_returns_copy(self):
        number = RealAlgebraicNumber(Poly(S ** 2 - 2, S, domain=QQ), 1, 2)
        refined = number.refine(Fraction(1, 1000))
        self.assertEqual((1, 2), (number.lo, number.hi))
        self.assertLessEqual(refined.hi - refined.lo, Fraction(1, 1000))
        self.assertEqual(number, refined)
        self.assertIs(refined, refined.refine(Fraction(1, 10)))

        sqrt3 = RealAlgebraicNumber(Poly(S ** 2 - 3, S, domain=QQ), Fraction(17, 10), Fraction(18, 10))
        self.assertEqual(-1, number.compare(sqrt3))
        self.assertEqual(1, number.compare_rational(Fraction(141421, 100000)))
        self.assertEqual((1, 2), (number.lo, number.hi))
        self.assertEqual((Fraction(17, 10), Fraction(18, 10)), (sqrt3.lo, sqrt3.hi))

        with self.assertRaises(AttributeError):
            number.lo = Fraction(3, 2)


class TestCertifiedSign(TestCase):
    def setUp(self) -> None:
        self.field = RealField(SQRT2)

    def test_exact_zero(self):
        a = self.field.gen
        self.assertEqual(0, certified_sign(a * a - 2))

    def test_close_to_zero(self):
        # 99/70 approximates sqrt 2 from above by about 7e-5
        a = self.field.gen
        self.assertEqual(-1, certified_sign(a - Fraction(99, 70)))
        self.assertEqual(1, certified_sign(Fraction(99, 70) - a))

    def test_other_embedding(self):
        a = self.field.gen
        low, high = self.field.embeddings()
        self.assertEqual(1, certified_sign(a, at=high))
        self.assertEqual(-1, certified_sign(a, at=low))

    def test_rationals(self):
        self.assertEqual(-1, certified_sign(Fraction(-3, 7)))
        self.assertEqual(0, certified_sign(0))

    def test_precision_cap(self):
        a = self.field.gen
        tight = DEFAULT_SETTINGS.replace(initial_precision=2, max_precision=2)
        with self.assertRaises(UncertifiedError):
            certified_sign(a - Fraction(665857, 470832), settings=tight)

    def test_field_inverse(self):
        a = self.field.gen
        self.assertEqual(self.field.one, a * (1 / a))
        self.assertEqual(a / 2, a.inverse())

    def test_cubic_field_against_floats(self):
        rng = random.Random(11)
        field = RealField(PLASTIC)
        rho = field.gen
        approx = 1.3247179572447460
        for _ in range(200):
            c0, c1, c2 = (Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3))
            value = c0 + c1 * rho + c2 * rho * rho
            expected = float(c0) + float(c1) * approx + float(c2) * approx ** 2
            if not (c0 or c1 or c2):
                self.assertEqual(0, certified_sign(value))
            elif abs(expected) > 1e-6:
                self.assertEqual(math.copysign(1, expected), certified_sign(value), str(value))

    def test_sine_term_against_floats(self):
        rng = random.Random(12)
        angle = AlgebraicAngle.from_root_of_unity(7, 1)
        g = angle.field.gen
        cosine, sine = 2 * math.cos(2 * math.pi / 7), math.sin(2 * math.pi / 7)
        for _ in range(200):
            c0, c1, d0, d1 = (rng.randint(-5, 5) for _ in range(4))
            expected = c0 + c1 * cosine + (d0 + d1 * cosine) * sine
            if abs(expected) > 1e-6:
                self.assertEqual(math.copysign(1, expected), certified_sign(c0 + c1 * g, d0 + d1 * g),
                                 f"{c0} {c1} {d0} {d1}")


class TestUnitCircle(TestCase):
    def test_compact_form(self):
        # t^2 - t + 1 = t·(s - 1) with s = t + 1/t
        self.assertEqual(Poly(S - 1, S, domain=QQ), compact_form(LaurentPoly.parse("t^2-t+1")))
        with self.assertRaises(ValueError):
            compact_form(LaurentPoly.parse("2t^2-5t+1"))

    def test_cyclotomic_trace(self):
        self.assertEqual(Poly(S ** 2 + S - 1, S, domain=QQ), cyclotomic_trace_poly(5))
        self.assertEqual(3, cyclotomic_trace_poly(7).degree())

    def test_trefoil_roots(self):
        locus = unit_circle_roots(LaurentPoly.parse("t^2-t+1"))
        self.assertEqual(1, len(locus))
        self.assertEqual(Fraction(1, 6), locus[0].turn())
        self.assertEqual("2π·1/6", str(locus[0]))

    def test_no_unimodular_roots(self):
        self.assertEqual(0, len(unit_circle_roots(LaurentPoly.parse("2t^2-5t+2"))))
        self.assertEqual(0, len(unit_circle_roots(LaurentPoly.parse("t^2-3t+1"))))

    def test_irrational_angle(self):
        # roots e^{±iθ} with cos θ = 3/4
        locus = unit_circle_roots(LaurentPoly.parse("2t^2-3t+2"))
        self.assertEqual(1, len(locus))
        angle = locus[0]
        self.assertIsNone(angle.turn())
        self.assertEqual(angle, AlgebraicAngle.from_cosine(Fraction(3, 4)))
        lo, hi = angle.pi_fraction_bounds(width=Fraction(1, 10 ** 12))
        self.assertLessEqual(hi - lo, Fraction(1, 10 ** 12))
        expected = sympy.acos(sympy.Rational(3, 4)) / sympy.pi
        self.assertTrue(lo <= Fraction(str(sympy.N(expected, 30))) <= hi)

    def test_roots_at_plus_minus_one(self):
        locus = unit_circle_roots(LaurentPoly.parse("t^2-1"))
        self.assertTrue(locus.at_one)
        self.assertTrue(locus.at_minus_one)
        self.assertEqual(0, len(locus))

    def test_product_roots_are_union(self):
        pool = [LaurentPoly.parse(text) for text in
                ("t^2-t+1", "2t^2-3t+2", "3t^2-5t+3", "t^2+1", "t^4+t^3+t^2+t+1", "2t^2-5t+2",
                 "3t-1", "t^2+2t-2", "t-1", "t+1")]
        rng = random.Random(13)
        for _ in range(40):
            f, g = rng.choice(pool) * rng.choice(pool), rng.choice(pool)
            whole, left, right = unit_circle_roots(f * g.conjugate()), unit_circle_roots(f), unit_circle_roots(g)
            self.assertEqual(set(left) | set(right), set(whole), f"{f}, {g}")
            self.assertEqual(len(set(whole)), len(whole))
            self.assertTrue(all(a < b for a, b in zip(whole, whole[1:])))
            self.assertEqual(left.at_one or right.at_one, whole.at_one)
            self.assertEqual(left.at_minus_one or right.at_minus_one, whole.at_minus_one)

    def test_angle_ordering(self):
        angles = [AlgebraicAngle.from_root_of_unity(7, k) for k in (3, 1, 2)]
        self.assertEqual([Fraction(1, 7), Fraction(2, 7), Fraction(3, 7)], [a.turn() for a in sorted(angles)])
        self.assertEqual(AlgebraicAngle.from_root_of_unity(7, 6), AlgebraicAngle.from_root_of_unity(7, 1))

    def test_json(self):
        angle = AlgebraicAngle.from_root_of_unity(11, 3)
        self.assertEqual(angle, AlgebraicAngle.from_json(angle.to_json()))


class TestCyclotomic(TestCase):
    def test_vanishing(self):
        trefoil = LaurentPoly.parse("t^2-t+1")
        self.assertTrue(eval_root_of_unity(trefoil, 6, 1)[1])
        self.assertTrue(eval_root_of_unity(trefoil, 6, 5)[1])
        self.assertFalse(eval_root_of_unity(trefoil, 3, 1)[1])

    def test_norm(self):
        value, vanishes = eval_root_of_unity(LaurentPoly.parse("t-2"), 3, 1)
        self.assertFalse(vanishes)
        # N(ζ - 2) = (ζ - 2)(ζ² - 2) = 4 + 2 + 1
        self.assertEqual(Fraction(7), value.norm())
