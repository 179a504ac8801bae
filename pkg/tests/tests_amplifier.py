# -*- coding: utf-8 -*-
import math
import os
import shutil
import tempfile
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from soficlab import (PermWitness, MatrixWitness, dilute, replicate, amalgamate, shift_amplify,
                      tensor_replicate, block_dilute, block_sum, linear_shift_amplify,
                      unitary_shift_amplify, fit_phase_shares,
                      save_witness, load_witness, witness_summary, Permutation,
                      ExponentVectorMatrix, hamming_distance, make_symmetric_hamming,
                      make_cyclic_lee, make_cyclic_unitary,
                      shift_metric, InvalidArgument, InvalidParameter, SpecSyntaxError)
from soficlab.conf import setting


def natural(group):
    return PermWitness(group, {g: g for g in group.elements})


def random_witness(rng, source, degree):
    return PermWitness(source, {g: Permutation(int(x) for x in rng.permutation(degree))
                                for g in source.elements}, degree)


def exponent_witness(source, images, family='gl-rank', modulus=5):
    return MatrixWitness(source, {g: ExponentVectorMatrix(a, modulus)
                                  for g, a in images.items()}, family)


def unitary_natural(group):
    return MatrixWitness(group, {g: ExponentVectorMatrix(group.exponents * g, group.p)
                                 for g in group.elements}, 'unitary')


class PermutationWitnessTests(SimpleTestCase):
    def setUp(self):
        self.s3 = make_symmetric_hamming(3)

    def test_regular(self):
        w = PermWitness.regular(self.s3)
        self.assertEqual(w.degree, 6)
        self.assertTrue(all(w.distance(g, h) == 1 for g, h in w.pairs()))
        self.assertEqual(w.defect().hom_defect, 0)
        self.assertEqual(w.defect().metric_defect, Fraction(1, 3))

    def test_degree_mismatch(self):
        with self.assertRaises(InvalidArgument):
            PermWitness(self.s3, {self.s3.identity: Permutation.identity(4)}, 3)

    def test_dilute(self):
        w = dilute(PermWitness.regular(self.s3), 18)
        self.assertEqual(w.degree, 18)
        self.assertTrue(all(w.distance(g, h) == Fraction(1, 3) for g, h in w.pairs()))
        with self.assertRaises(InvalidArgument):
            dilute(w, 5)

    def test_replicate(self):
        w = natural(self.s3)
        copies = replicate(w, 4)
        self.assertEqual(copies.degree, 12)
        for g, h in w.pairs():
            self.assertEqual(copies.distance(g, h), w.distance(g, h))
        self.assertEqual(copies.defect().value, 0)
        with self.assertRaises(InvalidArgument):
            replicate(w, 0)

    def test_amalgamate(self):
        w = amalgamate(natural(self.s3), PermWitness.regular(self.s3))
        self.assertEqual(w.degree, 9)
        distances = {w.distance(g, h) for g, h in w.pairs()}
        self.assertEqual(distances, {Fraction(8, 9), Fraction(1)})

    def test_amalgamate_empty(self):
        w = natural(self.s3)
        empty = PermWitness(self.s3, {g: Permutation(()) for g in self.s3.elements})
        self.assertEqual(empty.degree, 0)
        self.assertIs(amalgamate(w, empty), w)
        self.assertIs(amalgamate(empty, w), w)

    def test_amalgamate_fragments(self):
        w = natural(self.s3)
        other = PermWitness(self.s3, {self.s3.identity: self.s3.identity})
        with self.assertRaises(InvalidArgument):
            amalgamate(w, other)

    def test_averaging(self):
        rng = np.random.default_rng(0)
        source = make_cyclic_lee(5)
        for _ in range(100):
            m1, m2 = (int(m) for m in rng.integers(1, 9, size=2))
            w1, w2 = random_witness(rng, source, m1), random_witness(rng, source, m2)
            w = amalgamate(w1, w2)
            for g, h in w.pairs():
                self.assertEqual(w.distance(g, h), (m1 * w1.distance(g, h)
                                                    + m2 * w2.distance(g, h)) / (m1 + m2))

    def test_defect_law(self):
        rng = np.random.default_rng(1)
        source = make_cyclic_lee(5)
        for _ in range(50):
            m1, m2 = (int(m) for m in rng.integers(1, 9, size=2))
            w1, w2 = random_witness(rng, source, m1), random_witness(rng, source, m2)
            w = amalgamate(w1, w2)
            average = lambda x1, x2: (m1 * x1 + m2 * x2) / (m1 + m2)
            for g in range(5):
                for h in range(5):
                    gh = source.mul(g, h)
                    self.assertEqual(
                        hamming_distance(w.images[gh], w.images[g] * w.images[h]),
                        average(hamming_distance(w1.images[gh], w1.images[g] * w1.images[h]),
                                hamming_distance(w2.images[gh], w2.images[g] * w2.images[h])))

            d, d1, d2 = w.defect(), w1.defect(), w2.defect()
            self.assertEqual(d.identity_defect,
                             average(d1.identity_defect, d2.identity_defect))
            self.assertLessEqual(d.hom_defect, average(d1.hom_defect, d2.hom_defect))
            self.assertLessEqual(d.metric_defect, average(d1.metric_defect, d2.metric_defect))
            self.assertLessEqual(d.value, max(d1.value, d2.value))


class ShiftAmplifyTests(SimpleTestCase):
    def setUp(self):
        self.s3 = make_symmetric_hamming(3)

    def test_half(self):
        w = shift_amplify(natural(self.s3), PermWitness.regular(self.s3), '1/2')
        self.assertEqual(w.degree, 18)
        self.assertEqual(w.deviation, 0)
        self.assertTrue(w.within_tol)
        self.assertEqual({row['distance'] for row in w.rows}, {Fraction(7, 9), Fraction(1)})
        self.assertTrue(all(row['exact_match'] for row in w.rows))

    def test_exact(self):
        shifted = {eps: shift_metric(self.s3, eps) for eps in ('1/3', '1/2', '1')}
        for eps, group in shifted.items():
            w = shift_amplify(natural(self.s3), PermWitness.regular(self.s3), eps)
            for g, h in w.pairs():
                self.assertEqual(w.distance(g, h), group.distance(g, h), eps)

    def test_degrees(self):
        regular = PermWitness.regular(self.s3)
        self.assertEqual(shift_amplify(natural(self.s3), regular, '1/3').degree, 24)
        self.assertEqual(shift_amplify(natural(self.s3), regular, 1).degree, 12)

    def test_cyclic(self):
        source = make_cyclic_lee(5)
        regular = PermWitness.regular(source)
        w = shift_amplify(regular, regular, '1/2')
        self.assertEqual(w.deviation, 0)
        self.assertEqual(w.defect().hom_defect, 0)

    def test_group_targets(self):
        w = shift_amplify(natural(self.s3), PermWitness.regular(self.s3), '1/2', group=self.s3)
        self.assertTrue(w.within_tol)

    def test_zero(self):
        theta = natural(self.s3)
        w = shift_amplify(theta, None, 0)
        self.assertEqual(w.degree, 3)
        self.assertEqual(w.deviation, 0)

    def test_errors(self):
        theta = natural(self.s3)
        with self.assertRaises(InvalidArgument):
            shift_amplify(theta, theta, '1/2')
        with self.assertRaises(InvalidParameter):
            shift_amplify(theta, PermWitness.regular(self.s3), 2)

    def test_summary(self):
        w = shift_amplify(natural(self.s3), PermWitness.regular(self.s3), '1/2')
        summary = witness_summary(w)
        self.assertEqual(summary['degree'], 18)
        self.assertEqual(summary['deviation'], '0')
        self.assertEqual(len(summary['pairs']), 15)
        self.assertIn(summary['pairs'][0]['distance'], ('7/9', '1'))


class MatrixWitnessTests(SimpleTestCase):
    def setUp(self):
        self.source = make_cyclic_lee(5)

    def test_rank_dilution(self):
        w = exponent_witness(self.source, {0: (0, 0), 1: (1, 2)})
        self.assertEqual(w.distance(0, 1), 1)
        self.assertEqual(block_dilute(w, 6).distance(0, 1), Fraction(1, 3))
        with self.assertRaises(InvalidArgument):
            block_dilute(w, 1)

    def test_hs_dilution(self):
        w = exponent_witness(self.source, {0: (0, 0), 1: (1, 2)}, family='unitary')
        ratio = block_dilute(w, 6).distance(0, 1) / w.distance(0, 1)
        self.assertAlmostEqual(ratio, math.sqrt(1 / 3), delta=1e-12)

    def test_numeric_dilution(self):
        w = exponent_witness(self.source, {0: (0, 0), 1: (1, 2)}, family='unitary')
        numeric = MatrixWitness(self.source, {g: a.to_unitary() for g, a in w.images.items()},
                                'unitary')
        self.assertEqual(numeric.kind, 'unitary')
        self.assertAlmostEqual(block_dilute(numeric, 6).distance(0, 1),
                               block_dilute(w, 6).distance(0, 1), delta=1e-12)

    def test_tensor(self):
        images = {0: (0, 0, 0), 1: (1, 0, 4), 2: (2, 0, 3)}
        for family in ('gl-rank', 'unitary'):
            w = exponent_witness(self.source, images, family=family)
            tensored = tensor_replicate(w, 3)
            self.assertEqual(tensored.degree, 9)
            for g, h in w.pairs():
                self.assertAlmostEqual(tensored.distance(g, h), w.distance(g, h), delta=1e-12)

        w = exponent_witness(self.source, images, family='unitary')
        numeric = MatrixWitness(self.source, {g: a.to_unitary() for g, a in w.images.items()},
                                'unitary')
        tensored = tensor_replicate(numeric, 2)
        for g, h in w.pairs():
            self.assertAlmostEqual(tensored.distance(g, h), w.distance(g, h), delta=1e-12)

    def test_block_sum(self):
        w1 = exponent_witness(self.source, {0: (0, 0), 1: (1, 2)})
        w2 = exponent_witness(self.source, {0: (0, 0, 0), 1: (1, 0, 0)})
        self.assertEqual(block_sum(w1, w2).distance(0, 1), Fraction(2 + 1, 5))

        u1 = exponent_witness(self.source, {0: (0, 0), 1: (1, 2)}, family='unitary')
        u2 = exponent_witness(self.source, {0: (0, 0, 0), 1: (1, 0, 0)}, family='unitary')
        d1, d2 = u1.distance(0, 1), u2.distance(0, 1)
        self.assertAlmostEqual(block_sum(u1, u2).distance(0, 1),
                               math.sqrt((2 * d1 ** 2 + 3 * d2 ** 2) / 5), delta=1e-12)

        with self.assertRaises(InvalidArgument):
            block_sum(w1, u2)
        with self.assertRaises(InvalidArgument):
            block_sum(w1, exponent_witness(self.source, {0: (0,), 1: (1,)}, modulus=7))

    def test_rank_needs_exponents(self):
        with self.assertRaises(InvalidArgument):
            MatrixWitness(self.source, {0: ExponentVectorMatrix((0,), 5).to_unitary()}, 'gl-rank')
        with self.assertRaises(InvalidParameter):
            exponent_witness(self.source, {0: (0,)}, family='hs')

    def test_linear_shift(self):
        theta = exponent_witness(self.source, {0: (0, 0), 1: (1, 0)})
        theta_prime = exponent_witness(self.source, {0: (0, 0, 0, 0), 1: (1, 0, 0, 0)})
        w = linear_shift_amplify(theta, theta_prime, 1)
        self.assertEqual(w.degree, 8)
        self.assertEqual(w.distance(0, 1), Fraction(3, 8))
        self.assertEqual(w.deviation, 0)
        self.assertTrue(w.within_tol)

    def test_linear_shift_empty(self):
        theta = exponent_witness(self.source, {0: (0, 0), 1: (1, 0)})
        empty = exponent_witness(self.source, {0: (), 1: ()})
        w = linear_shift_amplify(theta, empty, '1/2')
        self.assertEqual(w.distance(0, 1), theta.distance(0, 1))
        self.assertEqual(w.deviation, 0)

    def test_linear_shift_companion(self):
        theta = exponent_witness(self.source, {0: (0, 0), 1: (1, 0)})
        theta_prime = exponent_witness(self.source, {0: (0, 0, 0, 0), 1: (1, 0, 0, 0)})
        with self.assertRaises(InvalidArgument):
            linear_shift_amplify(theta, theta_prime, 1, companion=self.source)

    def test_linear_shift_family(self):
        theta = exponent_witness(self.source, {0: (0, 0), 1: (1, 0)}, family='unitary')
        with self.assertRaises(InvalidParameter):
            linear_shift_amplify(theta, theta, 1)


class UnitaryShiftTests(SimpleTestCase):
    def setUp(self):
        self.group = make_cyclic_unitary(13, (1,))
        # HS distances halved, so that shifted targets stay within reach
        self.theta = block_dilute(unitary_natural(self.group), 4)

    def test_block_law(self):
        eps = Fraction(1, 4)
        w = unitary_shift_amplify(self.theta, eps, copies=500)
        self.assertEqual(w.degree, 2500)
        self.assertEqual(w.theta_prime.degree, 500)
        self.assertEqual(w.kind, 'exponent')
        for g, h in w.pairs():
            d, d_prime = self.theta.distance(g, h), w.theta_prime.distance(g, h)
            self.assertAlmostEqual(w.distance(g, h) ** 2, (4 * d ** 2 + d_prime ** 2) / 5,
                                   delta=1e-12)

        # Closer to the shifted metric than theta itself
        unshifted = max((self.theta.distance(g, h) + eps) / (1 + eps) - self.theta.distance(g, h)
                        for g, h in self.theta.pairs())
        self.assertLess(w.deviation, unshifted)
        self.assertGreaterEqual(w.fit_residual, 0)
        self.assertEqual(w.within_tol, w.deviation <= setting('SOFICLAB_UNITARY_TOL'))

    def test_numeric(self):
        numeric = MatrixWitness(self.group, {g: a.to_unitary()
                                             for g, a in self.theta.images.items()}, 'unitary')
        w = unitary_shift_amplify(numeric, '1/4', dimension=3)
        self.assertEqual(w.kind, 'unitary')
        self.assertEqual(w.degree, 7)
        for g, h in w.pairs():
            d, d_prime = numeric.distance(g, h), w.theta_prime.distance(g, h)
            self.assertAlmostEqual(w.distance(g, h) ** 2, (4 * d ** 2 + 3 * d_prime ** 2) / 7,
                                   delta=1e-9)

    def test_zero(self):
        w = unitary_shift_amplify(self.theta, 0)
        self.assertEqual(w.degree, 4)
        self.assertEqual(w.deviation, 0)
        self.assertTrue(w.within_tol)

    def test_fit_exact(self):
        mu = np.array([0.25, 0.5, 0, 0, 0.25])
        differences = [1, 2, 3, 4]
        squares = [sum(mu[j] * (1 - math.cos(2 * math.pi * j * m / 5)) / 2 for j in range(5))
                   for m in differences]
        fitted, residual = fit_phase_shares(5, differences, squares)
        self.assertAlmostEqual(residual, 0, delta=1e-7)
        self.assertAlmostEqual(fitted.sum(), 1, delta=1e-12)
        for m, square in zip(differences, squares):
            value = sum(fitted[j] * (1 - math.cos(2 * math.pi * j * m / 5)) / 2
                        for j in range(5))
            self.assertAlmostEqual(value, square, delta=1e-7)

    def test_errors(self):
        source = make_cyclic_lee(5)
        with self.assertRaises(InvalidParameter):
            unitary_shift_amplify(exponent_witness(source, {0: (0,), 1: (1,)}), '1/2')
        with self.assertRaises(InvalidParameter):
            unitary_shift_amplify(self.theta, 2)
        with self.assertRaises(InvalidArgument):
            unitary_shift_amplify(self.theta, '1/2', dimension=0)
        s3 = make_symmetric_hamming(3)
        w = exponent_witness(s3, {g: (i,) for i, g in enumerate(s3.elements)}, family='unitary')
        with self.assertRaises(InvalidParameter):
            unitary_shift_amplify(w, '1/2')


class WitnessFileTests(SimpleTestCase):
    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def test_permutation(self):
        s3 = make_symmetric_hamming(3)
        path = os.path.join(self.dir, 'natural.json')
        w = natural(s3)
        save_witness(w, path)
        loaded = load_witness(path)
        self.assertEqual(loaded.degree, 3)
        self.assertEqual(loaded.images, w.images)
        self.assertEqual(loaded.fragment, w.fragment)

    def test_exponent(self):
        source = make_cyclic_lee(5)
        path = os.path.join(self.dir, 'exponent.json')
        w = exponent_witness(source, {0: (0, 0), 1: (1, 2), 4: (4, 3)})
        save_witness(w, path)
        loaded = load_witness(path)
        self.assertEqual(loaded.kind, 'exponent')
        self.assertEqual(loaded.family, 'gl-rank')
        self.assertEqual(loaded.images, w.images)

    def test_bad_files(self):
        with self.assertRaises(SpecSyntaxError):
            load_witness({'source': 'cyclic:p=5', 'fragment': [0, 1], 'kind': 'permutation',
                          'images': [[1, 2]]})
        with self.assertRaises(SpecSyntaxError):
            load_witness({'source': 'cyclic:p=5', 'fragment': [0], 'kind': 'braid',
                          'images': [[1]]})
        with self.assertRaises(SpecSyntaxError):
            load_witness({'source': 'cyclic:p=5', 'fragment': [0]})
