# -*- coding: utf-8 -*-
"""
Quantitative obstructions for approximating (Z(p), d_Lee) by permutations, by matrices with
the rank metric and by unitaries with the Hilbert-Schmidt metric.

The images of an order-p element under an exact cyclic action are equilateral: all distinct
powers sit at one distance t from each other. Lee lengths run from 2/(p-1) to 1, so every
such action is off by max(|t - 2/(p-1)|, |1 - t|) >= (p-3)/(2(p-1)) somewhere.
"""
import warnings
from fractions import Fraction
from itertools import permutations, product

import numpy as np
from funcy import lmap, post_processing

from .elements import Permutation, ExponentVectorMatrix, hamming_distance, rank_distance, \
                      rank_length
from .exceptions import InvalidArgument, InvalidParameter, ValidationFailure
from .groups import check_prime, make_cyclic_lee
from .phases import phase_distribution_optimize
from .signals import certificate_issued
from .utils import rational, format_rational, dump_json


__all__ = ('Certificate', 'FamilyFloor', 'equilateral_check', 'exact_mismatch_floor',
           'mismatch_enumeration', 'kappa', 'transfer_bound', 'local_search_bound',
           'transfer_oracle', 'hs_mismatch_floor', 'certify_not_sofic',
           'EXACT_FAMILIES', 'ALL_FAMILIES', 'STATED_MIN_P')


EXACT_FAMILIES = ('symmetric', 'gl-rank')
ALL_FAMILIES = EXACT_FAMILIES + ('hs',)
# The smallest p the obstruction is classically stated for
STATED_MIN_P = 13


def equilateral_check(sigma, p):
    """
    Returns t = (n - c) / n, the common Hamming distance between distinct powers of sigma
    """
    check_prime(p)
    if sigma.is_identity() or not (sigma ** p).is_identity():
        raise InvalidArgument('Expected a permutation of order %d' % p)
    powers = [sigma ** i for i in range(p)]
    t = Fraction(sigma.moved_points(), len(sigma))
    for i in range(p):
        for j in range(i + 1, p):
            if hamming_distance(powers[i], powers[j]) != t:
                raise ValidationFailure('Powers %d and %d of %r are not at distance %s'
                                        % (i, j, sigma, t))
    return t


def rank_equilateral_check(a):
    """
    rho(a^i, 1) for 0 < i < p, all equal to the share of non-zero exponents
    """
    t = rank_length(a)
    identity = ExponentVectorMatrix.identity(a.modulus, a.dimension)
    for i in range(1, a.modulus):
        if rank_distance(a ** i, identity) != t:
            raise ValidationFailure('rho(a^%d, 1) differs from rho(a, 1) for %r' % (i, a))
    return t


### Exact floors

def _lee_extremes(p):
    source = make_cyclic_lee(p)
    return source.length(1), source.length((p - 1) // 2)

def _mismatch(t, low, high):
    return max(abs(t - low), abs(high - t))


def exact_mismatch_floor(p, family='symmetric'):
    """
    (p-3)/(2(p-1)), the least possible mismatch of an equilateral image.
    The minimum of the convex piecewise-linear mismatch over [0, 1] is checked exactly
    at its breakpoints.
    """
    check_prime(p, minimum=3)
    if family not in EXACT_FAMILIES:
        raise InvalidParameter('No exact floor for family %r' % family)

    low, high = _lee_extremes(p)
    floor = Fraction(p - 3, 2 * (p - 1))
    candidates = {Fraction(0), Fraction(1), low, high, (low + high) / 2}
    best = min(_mismatch(t, low, high) for t in candidates if 0 <= t <= 1)
    if best != floor:
        raise ValidationFailure('Breakpoint minimum %s differs from %s' % (best, floor))
    if not floor:
        warnings.warn('p=%d: Lee extremes coincide, the floor degenerates to 0' % p,
                      RuntimeWarning)
    return floor


def feasible_shares(p, n, family):
    """
    Distances t between distinct powers realizable by order-p images of degree n
    """
    if family == 'symmetric':
        return [Fraction(n - c, n) for c in range(n % p, n + 1, p)]
    return [Fraction(k, n) for k in range(n + 1)]


@post_processing(list)
def mismatch_enumeration(p, family='symmetric', n_max=200):
    """
    Best feasible mismatch for every degree up to n_max
    """
    low, high = _lee_extremes(p)
    for n in range(1, n_max + 1):
        value, t = min((_mismatch(t, low, high), t) for t in feasible_shares(p, n, family))
        yield {'n': n, 't': t, 'mismatch': value}


### Transfer to approximate homomorphisms

def kappa(p):
    """
    Transfer constant: a map into S_n with hom and identity defects <= delta, whose image
    of a generator sigma satisfies d(sigma^p, 1) <= p delta by chaining, has metric defect
    at least floor - kappa(p) delta.
    """
    check_prime(p, minimum=3)
    return Fraction(3 * p + 1, 4)


def transfer_bound(p, delta, family='symmetric'):
    if family not in EXACT_FAMILIES:
        raise InvalidParameter('No transfer constant for family %r' % family)
    delta = rational(delta)
    if delta < 0:
        raise InvalidParameter('delta should be non-negative, got %s' % delta)
    return max(Fraction(0), exact_mismatch_floor(p, family) - kappa(p) * delta)


def local_search_bound(p):
    """
    Lower bound on the max of defect components of any map Z(p) -> S_n
    """
    return exact_mismatch_floor(p) / (1 + kappa(p))


def transfer_oracle(p, n, deltas=(Fraction(1, 100), Fraction(1, 20), Fraction(1, 10))):
    """
    Exhaustively runs all maps {g, g^2} -> S_n for the cyclic group of order 3,
    checking the power drift d(sigma^3, 1) <= 3 hom_defect and the transfer bound.
    """
    if p != 3:
        raise InvalidParameter('The exhaustive oracle covers p = 3 only')
    if not 1 <= n <= 5:
        raise InvalidParameter('The exhaustive oracle covers n <= 5 only')
    source = make_cyclic_lee(p)
    d_source = source.distance(1, 2)
    identity = Permutation.identity(n)
    maps, drift_ratio = 0, Fraction(0)
    bounds = {delta: transfer_bound(p, delta) for delta in deltas}
    best = {delta: None for delta in deltas}

    for sigma, tau in product(_all_permutations(n), repeat=2):
        maps += 1
        # g * g = g^2 and g^2 * g^2 = g^4 = g
        hom = max(hamming_distance(tau, sigma * sigma), hamming_distance(sigma, tau * tau))
        metric = abs(d_source - hamming_distance(sigma, tau))
        drift = hamming_distance(sigma ** p, identity)
        if drift > p * hom:
            raise ValidationFailure('Power drift %s above %d * %s for %r, %r'
                                    % (drift, p, hom, sigma, tau))
        if hom:
            drift_ratio = max(drift_ratio, drift / hom)
        for delta in deltas:
            if hom < delta and metric < delta:
                value = max(hom, metric)
                if value < bounds[delta]:
                    raise ValidationFailure('Defect %s below the transfer bound at %s'
                                            % (value, delta))
                if best[delta] is None or value < best[delta]:
                    best[delta] = value

    return {
        'p': p, 'n': n, 'maps': maps,
        'max_drift_ratio': drift_ratio,
        'best_accepted': {format_rational(delta): best[delta] for delta in deltas},
        'bounds': {format_rational(delta): bounds[delta] for delta in deltas},
    }


def _all_permutations(n):
    return lmap(Permutation, permutations(range(n)))


### HS floor

def hs_mismatch_floor(p, grid_resolution=100, seed=0):
    return phase_distribution_optimize(p, grid_resolution, seed)


### Certificates

class FamilyFloor(object):
    def __init__(self, family, floor, method, proof_data, transfer):
        self.family = family
        self.floor = floor
        self.method = method
        self.proof_data = proof_data
        self.transfer = transfer

    def as_dict(self):
        return {
            'family': self.family,
            'floor': self.floor if isinstance(self.floor, float) else format_rational(self.floor),
            'method': self.method,
            'proof_data': self.proof_data,
            'transfer': self.transfer,
        }


class Certificate(object):
    def __init__(self, p, n_max, delta_max, resolution, seed, floors, notes):
        self.p = p
        self.n_max = n_max
        self.delta_max = delta_max
        self.resolution = resolution
        self.seed = seed
        self.floors = floors
        self.notes = notes

    @property
    def obstruction(self):
        return all(f.floor > 0 for f in self.floors.values())

    def floor(self, family):
        return self.floors[family].floor

    def params(self):
        return {'p': self.p, 'n_max': self.n_max, 'delta_max': self.delta_max,
                'resolution': self.resolution, 'seed': self.seed,
                'families': list(self.floors)}

    def as_dict(self):
        return {
            'p': self.p,
            'n_range': [1, self.n_max],
            'obstruction': self.obstruction,
            'families': {name: f.as_dict() for name, f in self.floors.items()},
            'notes': self.notes,
        }

    def verify(self):
        """
        Re-runs every enumeration and compares the serialized certificates
        """
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', RuntimeWarning)
            again = certify_not_sofic(**self.params())
        return dump_json(again.as_dict()) == dump_json(self.as_dict())


def _exact_floor(p, family, n_max, delta_max, seed):
    floor = exact_mismatch_floor(p, family)
    table = mismatch_enumeration(p, family, n_max)
    least = min(table, key=lambda row: (row['mismatch'], row['n']))
    if least['mismatch'] < floor:
        raise ValidationFailure('Enumeration found %s below the floor %s'
                                % (least['mismatch'], floor))

    proof = {
        'breakpoints': lmap(format_rational, sorted({Fraction(0), Fraction(1),
                                                     Fraction(2, p - 1),
                                                     Fraction(p + 1, 2 * (p - 1))})),
        'attained_at_t': format_rational(Fraction(p + 1, 2 * (p - 1))),
        'enumeration_min': format_rational(least['mismatch']),
        'enumeration_argmin': {'n': least['n'], 't': format_rational(least['t'])},
        'table': [{'n': row['n'], 't': format_rational(row['t']),
                   'mismatch': format_rational(row['mismatch'])} for row in table],
    }
    if family == 'gl-rank':
        rng = np.random.default_rng(seed)
        samples = 200
        for _ in range(samples):
            dimension = int(rng.integers(1, 61))
            rank_equilateral_check(ExponentVectorMatrix(rng.integers(p, size=dimension), p))
        proof['reduction'] = 'rho(a^i, 1) equals the share of non-zero exponents for 0 < i < p'
        proof['equilateral_samples'] = samples
    else:
        proof['reduction'] = 'distinct powers of an order-p permutation are at distance (n-c)/n'

    k = kappa(p)
    transfer = {
        'kappa': format_rational(k),
        'formula': 'max(0, floor - kappa * delta)',
        'vanishes_at': format_rational(floor / k),
        'local_search_bound': format_rational(floor / (1 + k)),
    }
    if delta_max is not None:
        transfer['bound_at_delta_max'] = format_rational(transfer_bound(p, delta_max, family))
        transfer['delta_max'] = format_rational(rational(delta_max))
    method = 'exact-enumeration' if family == 'symmetric' else 'exponent-vector-reduction'
    return FamilyFloor(family, floor, method, proof, transfer)


def _hs_floor(p, resolution, seed):
    optimum = hs_mismatch_floor(p, resolution, seed)
    proof = optimum.as_dict()
    return FamilyFloor('hs', optimum.floor, 'grid+lp-bisection', proof,
                       {'kappa': None, 'formula': 'no transfer constant for this family'})


def certify_not_sofic(p, n_max=200, delta_max=None, resolution=100, seed=0,
                      families=ALL_FAMILIES):
    check_prime(p, minimum=3)
    if n_max < 1:
        raise InvalidParameter('n_max should be positive, got %r' % n_max)
    unknown = set(families) - set(ALL_FAMILIES)
    if unknown:
        raise InvalidParameter('Unknown families: %s' % ', '.join(sorted(unknown)))

    notes = []
    if p < 5:
        notes.append('degenerate: the Lee metric of Z(%d) is equilateral, no obstruction' % p)
    if p < STATED_MIN_P:
        notes.append('p=%d is below the classically stated range p >= %d' % (p, STATED_MIN_P))
        warnings.warn(notes[-1], RuntimeWarning)

    floors = {}
    for family in ALL_FAMILIES:
        if family not in families:
            continue
        if family == 'hs':
            floors[family] = _hs_floor(p, resolution, seed)
        else:
            floors[family] = _exact_floor(p, family, n_max, delta_max, seed)

    certificate = Certificate(p, n_max, delta_max, resolution, seed, floors, notes)
    certificate_issued.send(sender=Certificate, certificate=certificate)
    return certificate
