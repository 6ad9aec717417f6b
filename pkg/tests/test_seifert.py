import random
from unittest import TestCase

from knotforge.algebra.laurent import LaurentPoly
from knotforge.exceptions import InvalidSeifertMatrixError
from knotforge.seifert import (SeifertMatrix, EMPTY, alexander, alexander_power, arf, block_sum, determinant,
                               inverse_knot, mirror, validate)

from seifert_fixtures import V6, TREFOIL, FIGURE_EIGHT, random_seifert, random_unimodular


class TestSeifertMatrix(TestCase):
    def test_validate(self):
        self.assertEqual(V6, validate([[0, 2], [1, 0]]))
        self.assertEqual(1, V6.genus)
        self.assertEqual(2, V6[0, 1])

    def test_invalid(self):
        with self.assertRaises(InvalidSeifertMatrixError):
            validate([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        with self.assertRaises(InvalidSeifertMatrixError):
            validate([[1, 2], [2, 1]])
        with self.assertRaises(InvalidSeifertMatrixError):
            validate([[1, 2]])
        with self.assertRaises(InvalidSeifertMatrixError):
            validate([[0.5, 1], [0, 0]])

    def test_empty(self):
        self.assertEqual(0, EMPTY.genus)
        self.assertEqual(LaurentPoly.constant(1), alexander(EMPTY).delta)
        self.assertTrue(alexander(EMPTY).is_trivial)

    def test_json(self):
        self.assertEqual(V6, SeifertMatrix.from_json(V6.to_json()))
        self.assertEqual({"matrix": [[0, 2], [1, 0]]}, V6.to_json())

    def test_congruent_rejects_singular(self):
        with self.assertRaises(ValueError):
            V6.congruent([[2, 0], [0, 1]])


class TestAlexander(TestCase):
    def test_trefoil(self):
        data = alexander(TREFOIL)
        self.assertEqual("t^2-t+1", str(data.delta))
        self.assertEqual(1, data.top_coeff)
        self.assertEqual(2, data.degree)
        self.assertEqual(3, determinant(TREFOIL))
        self.assertEqual(1, arf(TREFOIL))

    def test_slice_example(self):
        data = alexander(V6)
        self.assertEqual("2t^2-5t+2", str(data.delta))
        self.assertEqual(2, data.top_coeff)
        self.assertEqual(9, determinant(V6))
        self.assertEqual(0, arf(V6))

    def test_figure_eight(self):
        self.assertEqual("t^2-3t+1", str(alexander(FIGURE_EIGHT).delta))
        self.assertEqual(5, determinant(FIGURE_EIGHT))
        self.assertEqual(1, arf(FIGURE_EIGHT))

    def test_symmetry(self):
        rng = random.Random(1)
        for _ in range(20):
            delta = alexander(random_seifert(rng, rng.randint(1, 3))).delta
            self.assertTrue(delta.is_reciprocal())
            self.assertEqual(1, abs(delta.evaluate(1)))

    def test_random_generator_scrambles(self):
        for seed in range(10):
            plain = random_seifert(random.Random(seed), 2, scramble=False)
            scrambled = random_seifert(random.Random(seed), 2)
            self.assertEqual(scrambled, random_seifert(random.Random(seed), 2))
            self.assertEqual(alexander(plain).delta, alexander(scrambled).delta)
            self.assertEqual(arf(plain), arf(scrambled))

    def test_congruence_invariance(self):
        rng = random.Random(2)
        for _ in range(20):
            v = random_seifert(rng, rng.randint(1, 2))
            w = v.congruent(random_unimodular(rng, v.dimension))
            self.assertEqual(alexander(v).delta, alexander(w).delta)

    def test_block_sum(self):
        rng = random.Random(3)
        for _ in range(10):
            v, w = random_seifert(rng, 1), random_seifert(rng, rng.randint(1, 2))
            total = block_sum(v, w)
            self.assertEqual(v.genus + w.genus, total.genus)
            self.assertEqual((alexander(v).delta * alexander(w).delta).canonical(), alexander(total).delta)
            self.assertEqual((arf(v) + arf(w)) % 2, arf(total))

    def test_mirror_and_inverse(self):
        for v in (TREFOIL, V6, FIGURE_EIGHT):
            self.assertEqual(alexander(v).delta, alexander(mirror(v)).delta)
            self.assertEqual(alexander(v).delta, alexander(inverse_knot(v)).delta)
            self.assertEqual(v, mirror(mirror(v)))

    def test_power(self):
        delta = alexander(TREFOIL).delta
        self.assertEqual(alexander(block_sum(TREFOIL, TREFOIL)).delta, alexander_power(delta, -2))
        self.assertEqual(LaurentPoly.constant(1), alexander_power(delta, 0))
