# -*- coding: utf-8 -*-
import math
import warnings
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from soficlab import (Permutation, ExponentVectorMatrix, PhaseDistribution, phase_profile,
                      phase_distribution_optimize, effective_resolution, equilateral_check,
                      exact_mismatch_floor, mismatch_enumeration, kappa, transfer_bound,
                      local_search_bound, transfer_oracle, certify_not_sofic,
                      InvalidArgument, InvalidParameter)
from soficlab.elements import hs_phase_distance
from soficlab.obstruction import rank_equilateral_check
from soficlab.signals import certificate_issued

from .utils import random_order_p_permutation


def quiet(func, *args, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', RuntimeWarning)
        return func(*args, **kwargs)


class EquilateralTests(SimpleTestCase):
    def test_single_cycle(self):
        self.assertEqual(equilateral_check(Permutation.from_cycles(5, [[0, 1, 2, 3, 4]]), 5), 1)
        self.assertEqual(equilateral_check(Permutation.from_cycles(10, [[0, 1, 2, 3, 4]]), 5),
                         Fraction(1, 2))

    def test_wrong_order(self):
        with self.assertRaises(InvalidArgument):
            equilateral_check(Permutation.identity(5), 5)
        with self.assertRaises(InvalidArgument):
            equilateral_check(Permutation.from_cycles(4, [[0, 1, 2]]), 5)

    def test_random(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            p = int(rng.choice([3, 5, 7, 13]))
            n = int(rng.integers(p, 4 * p + 1))
            sigma = random_order_p_permutation(rng, p, n)
            self.assertEqual(equilateral_check(sigma, p), Fraction(sigma.moved_points(), n))

    def test_rank(self):
        self.assertEqual(rank_equilateral_check(ExponentVectorMatrix([1, 0, 3], 7)),
                         Fraction(2, 3))


class FloorTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(exact_mismatch_floor(13), Fraction(5, 12))
        self.assertEqual(exact_mismatch_floor(13, 'gl-rank'), Fraction(5, 12))
        self.assertEqual(exact_mismatch_floor(5), Fraction(1, 4))
        self.assertEqual(exact_mismatch_floor(7), Fraction(1, 3))

    def test_degenerate(self):
        with self.assertWarns(RuntimeWarning):
            self.assertEqual(exact_mismatch_floor(3), 0)

    def test_errors(self):
        with self.assertRaises(InvalidParameter):
            exact_mismatch_floor(13, 'hs')
        with self.assertRaises(InvalidParameter):
            exact_mismatch_floor(9)

    def test_grid(self):
        p, N = 13, 10**4
        low, high = Fraction(2, p - 1), Fraction(1)
        floor = exact_mismatch_floor(p)
        for k in range(N + 1):
            t = Fraction(k, N)
            self.assertGreaterEqual(max(abs(t - low), abs(high - t)), floor)

    def test_enumeration(self):
        table = mismatch_enumeration(13, n_max=200)
        self.assertEqual(len(table), 200)
        least = min(table, key=lambda row: (row['mismatch'], row['n']))
        self.assertEqual(least['mismatch'], Fraction(5, 12))
        self.assertEqual(least['n'], 156)
        self.assertEqual(least['t'], Fraction(7, 12))
        self.assertEqual(table[12]['mismatch'], Fraction(5, 6))

    def test_enumeration_rank(self):
        table = mismatch_enumeration(13, 'gl-rank', n_max=20)
        least = min(table, key=lambda row: (row['mismatch'], row['n']))
        self.assertEqual(least['n'], 12)
        self.assertEqual(least['mismatch'], Fraction(5, 12))


class TransferTests(SimpleTestCase):
    def test_kappa(self):
        self.assertEqual(kappa(13), 10)
        self.assertEqual(kappa(3), Fraction(5, 2))
        with self.assertRaises(InvalidParameter):
            kappa(4)

    def test_bound(self):
        self.assertEqual(transfer_bound(13, 0), Fraction(5, 12))
        self.assertEqual(transfer_bound(13, '1/100'), Fraction(19, 60))
        self.assertEqual(transfer_bound(13, '1/24'), 0)
        self.assertEqual(transfer_bound(13, '1/2'), 0)
        self.assertEqual(local_search_bound(13), Fraction(5, 132))

    def test_monotone(self):
        deltas = [Fraction(k, 1000) for k in range(60)]
        bounds = [transfer_bound(13, delta) for delta in deltas]
        self.assertEqual(bounds, sorted(bounds, reverse=True))
        self.assertTrue(all(0 <= b <= Fraction(5, 12) for b in bounds))

    def test_errors(self):
        with self.assertRaises(InvalidParameter):
            transfer_bound(13, -1)
        with self.assertRaises(InvalidParameter):
            transfer_bound(13, '1/10', family='hs')

    def test_oracle(self):
        for n in range(1, 6):
            result = quiet(transfer_oracle, 3, n)
            self.assertEqual(result['maps'], math.factorial(n) ** 2)
            self.assertLessEqual(result['max_drift_ratio'], 3)

    def test_oracle_range(self):
        with self.assertRaises(InvalidParameter):
            transfer_oracle(5, 3)
        with self.assertRaises(InvalidParameter):
            transfer_oracle(3, 6)


class PhaseTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super(PhaseTests, cls).setUpClass()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            cls.optimum = phase_distribution_optimize(13)
        cls.caught = [str(w.message) for w in caught if w.category is RuntimeWarning]

    def test_p3(self):
        optimum = phase_distribution_optimize(3)
        self.assertAlmostEqual(optimum.floor, 1 - math.sqrt(3) / 2, delta=1e-9)

    def test_p13(self):
        optimum = self.optimum
        self.assertGreater(optimum.floor, 0)
        self.assertAlmostEqual(optimum.floor, optimum.lower_bound, delta=1e-6)
        self.assertLessEqual(optimum.floor, optimum.grid_best)
        self.assertLessEqual(optimum.floor, optimum.sampled_best + 1e-6)
        self.assertEqual(optimum.effective_resolution, 28)
        self.assertEqual(optimum.resolution, 100)
        self.assertTrue(any('lowered from 100 to 28' in message for message in self.caught))

    def test_p13_mu(self):
        mu = self.optimum.mu
        self.assertAlmostEqual(mu.weights.sum(), 1, delta=1e-9)
        self.assertAlmostEqual(mu.objective(), self.optimum.floor, delta=1e-12)
        profile = mu.profile()
        self.assertTrue(np.allclose(profile, profile[::-1]))

    def test_p5_brute(self):
        optimum = phase_distribution_optimize(5)
        w = np.linspace(0, 1, 100001)
        values = np.zeros_like(w)
        for m, lee in ((1, 0.5), (2, 1.0)):
            x = w * (1 - np.cos(2 * np.pi * m / 5)) + (1 - w) * (1 - np.cos(4 * np.pi * m / 5))
            values = np.maximum(values, np.abs(lee - np.sqrt(2 * x) / 2))
        self.assertLessEqual(optimum.floor, values.min() + 1e-6)
        self.assertAlmostEqual(optimum.floor, values.min(), delta=1e-4)

    def test_endpoint(self):
        rng = np.random.default_rng(1)
        for p in (5, 7, 13):
            for _ in range(20):
                profile = PhaseDistribution(p, rng.dirichlet(np.ones(p - 1))).profile()
                h = (p - 1) // 2
                self.assertGreaterEqual(h * profile[0] + 1e-12, profile[h - 1])

    def test_concentrated(self):
        mu = PhaseDistribution.concentrated(13, 6)
        for m in range(1, 13):
            expected = math.sqrt(2) * math.sqrt(1 - math.cos(2 * math.pi * 6 * m / 13))
            self.assertAlmostEqual(phase_profile(mu, m), expected, delta=1e-12)
        self.assertEqual(phase_profile(mu, 0), 0)
        self.assertEqual(phase_profile(mu, 13), 0)

    def test_exponent_shares(self):
        exponents = np.array([1, 2, 2, 12])
        mu = PhaseDistribution(13, [0.25, 0.5] + [0] * 9 + [0.25])
        for m in range(1, 13):
            self.assertAlmostEqual(phase_profile(mu, m),
                                   hs_phase_distance(exponents * m % 13, 13), delta=1e-12)

    def test_errors(self):
        with self.assertRaises(InvalidParameter):
            PhaseDistribution(5, [1, 0, 0])
        with self.assertRaises(InvalidParameter):
            PhaseDistribution(5, [0.5, 0.5, 0.5, -0.5])
        with self.assertRaises(InvalidParameter):
            PhaseDistribution(5, [0.5, 0.5, 0.5, 0.5])
        with self.assertRaises(InvalidParameter):
            phase_distribution_optimize(13, grid_resolution=5)
        with self.assertRaises(InvalidParameter):
            phase_distribution_optimize(4)

    def test_effective_resolution(self):
        self.assertEqual(effective_resolution(1, 100), 100)
        self.assertEqual(effective_resolution(2, 100), 100)
        self.assertEqual(effective_resolution(6, 100), 28)


class CertificateTests(SimpleTestCase):
    def test_p13(self):
        issued = []
        receiver = lambda sender, **kwargs: issued.append(kwargs['certificate'])
        certificate_issued.connect(receiver)
        try:
            certificate = quiet(certify_not_sofic, 13)
        finally:
            certificate_issued.disconnect(receiver)

        self.assertEqual(issued, [certificate])
        self.assertTrue(certificate.obstruction)
        self.assertEqual(certificate.floor('symmetric'), Fraction(5, 12))
        self.assertEqual(certificate.floor('gl-rank'), Fraction(5, 12))
        self.assertGreater(certificate.floor('hs'), 0)
        self.assertEqual(certificate.notes, [])

        data = certificate.as_dict()
        self.assertEqual(data['n_range'], [1, 200])
        symmetric = data['families']['symmetric']
        self.assertEqual(symmetric['floor'], '5/12')
        self.assertEqual(symmetric['method'], 'exact-enumeration')
        self.assertEqual(symmetric['proof_data']['enumeration_argmin'], {'n': 156, 't': '7/12'})
        self.assertEqual(symmetric['transfer']['kappa'], '10')
        self.assertEqual(symmetric['transfer']['local_search_bound'], '5/132')
        self.assertEqual(data['families']['gl-rank']['method'], 'exponent-vector-reduction')
        self.assertEqual(data['families']['hs']['method'], 'grid+lp-bisection')
        self.assertTrue(certificate.verify())

    def test_delta_max(self):
        certificate = certify_not_sofic(13, n_max=20, delta_max='1/100', families=['symmetric'])
        transfer = certificate.as_dict()['families']['symmetric']['transfer']
        self.assertEqual(transfer['bound_at_delta_max'], '19/60')
        self.assertEqual(list(certificate.floors), ['symmetric'])

    def test_p5(self):
        with self.assertWarns(RuntimeWarning):
            certificate = certify_not_sofic(5, families=('symmetric', 'gl-rank'))
        self.assertTrue(certificate.obstruction)
        self.assertEqual(certificate.floor('symmetric'), Fraction(1, 4))
        self.assertTrue(any('below the classically stated range' in note
                            for note in certificate.notes))

    def test_p3(self):
        certificate = quiet(certify_not_sofic, 3, n_max=30)
        self.assertFalse(certificate.obstruction)
        self.assertEqual(certificate.floor('symmetric'), 0)
        self.assertTrue(certificate.notes[0].startswith('degenerate'))
        self.assertTrue(certificate.verify())

    def test_errors(self):
        with self.assertRaises(InvalidParameter):
            certify_not_sofic(4)
        with self.assertRaises(InvalidParameter):
            certify_not_sofic(13, n_max=0)
        with self.assertRaises(InvalidParameter):
            certify_not_sofic(13, families=['orthogonal'])
