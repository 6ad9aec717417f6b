import itertools
import random
from unittest import TestCase

from knotforge.algebra.laurent import LaurentPoly, ONE, ZERO
from knotforge.blanchfield import (BlanchfieldValue, present_module, bl_pair, module_generators,
                                   nonsingularity_witnesses, self_annihilating_submodules, verify_self_annihilating,
                                   eta_generation_check)
from knotforge.exceptions import NonSquarefreeError, DimensionMismatchError
from knotforge.seifert import alexander, block_sum

from seifert_fixtures import V6, TREFOIL, FIGURE_EIGHT, random_seifert

E1 = (ONE, ZERO)
E2 = (ZERO, ONE)


class TestBlanchfieldValue(TestCase):
    def test_polynomials_vanish(self):
        self.assertTrue(BlanchfieldValue(LaurentPoly.parse("t^2-3+t^-1")).is_zero())
        self.assertFalse(BlanchfieldValue(LaurentPoly.parse("1"), LaurentPoly.parse("t-2")).is_zero())

    def test_reduction(self):
        # (t^2)/(t-2) = t + 2 + 4/(t-2)
        value = BlanchfieldValue(LaurentPoly.parse("t^2"), LaurentPoly.parse("t-2"))
        self.assertEqual(BlanchfieldValue(LaurentPoly.constant(4), LaurentPoly.parse("t-2")), value)
        # common factors cancel
        cancelled = BlanchfieldValue(LaurentPoly.parse("t-1"), LaurentPoly.parse("t^2-1"))
        self.assertEqual(BlanchfieldValue(ONE, LaurentPoly.parse("t+1")), cancelled)

    def test_arithmetic(self):
        a = BlanchfieldValue(ONE, LaurentPoly.parse("t-2"))
        self.assertTrue((a + (-a)).is_zero())
        self.assertTrue(a.scale(LaurentPoly.parse("t-2")).is_zero())

    def test_zero_denominator(self):
        with self.assertRaises(ZeroDivisionError):
            BlanchfieldValue(ONE, ZERO)


class TestAlexanderModule(TestCase):
    def test_slice_example(self):
        module = present_module(V6)
        self.assertEqual(2, module.dimension)
        self.assertEqual(1, len(module.invariant_factors))
        self.assertEqual(2, len(module.cyclic_decomposition))
        self.assertEqual(["2t^2-5t+2"], module.to_json()["invariant_factors"])
        self.assertFalse(module.is_zero_element(E1))
        self.assertTrue(module.is_zero_element((LaurentPoly.parse("2t-1"), ZERO)))

    def test_factors_multiply_to_delta(self):
        rng = random.Random(31)
        for _ in range(10):
            v = random_seifert(rng, rng.randint(1, 2))
            module = present_module(v)
            product = ONE
            for f in module.invariant_factors:
                product = product * f
            self.assertEqual(alexander(v).delta.monic(), product.monic())
            self.assertEqual(alexander(v).degree, module.dimension)

    def test_repeated_factor(self):
        module = present_module(block_sum(TREFOIL, TREFOIL))
        self.assertEqual(2, len(module.invariant_factors))
        self.assertEqual(4, module.dimension)


class TestPairing(TestCase):
    def test_slice_example(self):
        # (V - tVᵀ)⁻¹ is antidiagonal with entries 1/(1-2t) and 1/(2-t)
        self.assertTrue(bl_pair(V6, E1, E1).is_zero())
        self.assertTrue(bl_pair(V6, E2, E2).is_zero())
        expected = BlanchfieldValue(LaurentPoly.parse("1-t"), LaurentPoly.parse("1-2t"))
        self.assertEqual(expected, bl_pair(V6, E1, E2))

    def test_hermitian(self):
        rng = random.Random(32)
        for _ in range(5):
            v = random_seifert(rng, 1)
            x, y = module_generators(v)
            self.assertEqual(bl_pair(v, x, y).conjugate(), bl_pair(v, y, x))

    def test_hermitian_higher_genus(self):
        rng = random.Random(33)
        for genus in (2, 3):
            v = random_seifert(rng, genus)
            generators = module_generators(v)
            mixed = tuple(LaurentPoly.from_coefficients([rng.randint(-2, 2), rng.randint(-2, 2)], rng.randint(-1, 1))
                          for _ in generators)
            for x, y in itertools.combinations_with_replacement(generators + [mixed], 2):
                self.assertEqual(bl_pair(v, x, y).conjugate(), bl_pair(v, y, x), f"genus {genus}")

    def test_sesquilinear(self):
        f = LaurentPoly.parse("t+3")
        x = (f, ZERO)
        self.assertEqual(bl_pair(V6, E1, E2).scale(f), bl_pair(V6, x, E2))
        self.assertEqual(bl_pair(V6, E2, E1).scale(f.conjugate()), bl_pair(V6, E2, x))

    def test_integers_accepted(self):
        self.assertEqual(bl_pair(V6, E1, E2), bl_pair(V6, [1, 0], [0, 1]))

    def test_shape(self):
        with self.assertRaises(DimensionMismatchError):
            bl_pair(V6, [1], [0, 1])


class TestNonsingularity(TestCase):
    def test_slice_example(self):
        witnesses = nonsingularity_witnesses(V6)
        self.assertEqual([(0, 1), (1, 0)], [(w.generator, w.partner) for w in witnesses])
        self.assertEqual({"generator": 1, "partner": 2, "value": str(bl_pair(V6, E1, E2))}, witnesses[0].to_json())

    def test_random(self):
        rng = random.Random(33)
        for _ in range(8):
            v = random_seifert(rng, rng.randint(1, 2))
            witnesses = nonsingularity_witnesses(v)
            self.assertTrue(witnesses)
            self.assertTrue(all(w.partner is not None for w in witnesses))


class TestSelfAnnihilating(TestCase):
    def test_slice_example(self):
        submodules = self_annihilating_submodules(V6)
        self.assertEqual(2, len(submodules))
        for submodule in submodules:
            self.assertEqual(1, submodule.rank)
            self.assertTrue(verify_self_annihilating(V6, submodule.generators))
        self.assertEqual({"t-2", "t-1/2"}, {str(s.factors[0]) for s in submodules})

    def test_self_conjugate_factor(self):
        self.assertEqual([], self_annihilating_submodules(TREFOIL))
        self.assertEqual([], self_annihilating_submodules(FIGURE_EIGHT))

    def test_not_squarefree(self):
        with self.assertRaises(NonSquarefreeError):
            self_annihilating_submodules(block_sum(TREFOIL, TREFOIL))

    def test_verify_rejects(self):
        self.assertFalse(verify_self_annihilating(V6, [E1, E2]))
        self.assertFalse(verify_self_annihilating(V6, [(LaurentPoly.parse("2t-1"), ZERO)]))


class TestGeneration(TestCase):
    def test_primes(self):
        self.assertTrue(eta_generation_check(V6, "rational"))
        self.assertTrue(eta_generation_check(V6, 3))
        self.assertFalse(eta_generation_check(V6, 2))
        with self.assertRaises(ValueError):
            eta_generation_check(V6, 4)
