# -*- coding: utf-8 -*-
"""
Witness transformations behind the shift constructions: dilution by fixed points,
replication into disjoint copies, amalgamation side by side, and their matrix analogues
(tensoring with the identity, block dilution, block sums).

Side-by-side amalgams average distances with weights proportional to degrees, which is how
a metric witness and a discrete witness combine into a witness for the shifted metric.
"""
import json
import math
from fractions import Fraction

import numpy as np
from funcy import lmap, cached_property
from scipy.linalg import block_diag
from scipy.optimize import linprog

from .conf import setting
from .constructions import check_epsilon
from .elements import (Permutation, ExponentVectorMatrix, NumericUnitary,
                       hamming_distance, rank_distance, hs_distance)
from .exceptions import (SoficlabError, InvalidArgument, InvalidParameter, ResourceLimit,
                         SpecSyntaxError)
from .groups import CyclicGroup, regular_embedding
from .solver import ApproxInstance, Target, defect, encode_image, round_counts
from .utils import rational, format_scalar, dump_json


__all__ = ('PermWitness', 'MatrixWitness', 'dilute', 'replicate', 'amalgamate',
           'shift_amplify', 'tensor_replicate', 'block_dilute', 'block_sum',
           'linear_shift_amplify', 'unitary_shift_amplify', 'fit_phase_shares', 'distance_rows',
           'load_witness', 'save_witness', 'witness_summary')


class BaseWitness(object):
    """
    Images of a fragment of a source group, keyed by element, in fragment order
    """
    def __init__(self, source, images):
        self.source = source
        self.images = dict(images)

    @property
    def fragment(self):
        return list(self.images)

    def pairs(self):
        fragment = self.fragment
        return [(g, h) for i, g in enumerate(fragment) for h in fragment[i + 1:]]

    def defect(self):
        instance = ApproxInstance(self.source, Target(self.family, max(self.degree, 1)), 1,
                                  fragment=self.fragment)
        return defect(self.images, instance)

    def _check_fragment(self, other):
        if set(self.images) != set(other.images):
            raise InvalidArgument('Witnesses are defined on different fragments')

    def as_dict(self):
        return {
            'source': self.source.spec,
            'kind': self.kind,
            'degree': self.degree,
            'fragment': lmap(self.source.encode, self.fragment),
            'images': [encode_image(self.images[g]) for g in self.fragment],
        }


class PermWitness(BaseWitness):
    family = 'symmetric'
    kind = 'permutation'

    def __init__(self, source, images, degree=None):
        super(PermWitness, self).__init__(source, images)
        degrees = {len(a) for a in self.images.values()}
        if degree is None and len(degrees) == 1:
            degree = degrees.pop()
        if degrees - {degree}:
            raise InvalidArgument('Images of degrees %s in a degree %s witness'
                                  % (sorted(degrees), degree))
        self.degree = degree

    @classmethod
    def regular(cls, group):
        return cls(group, regular_embedding(group), group.order)

    def distance(self, g, h):
        return hamming_distance(self.images[g], self.images[h])


class MatrixWitness(BaseWitness):
    """
    Images given by exponent vectors (rank or HS metric) or numeric unitaries (HS metric)
    """
    def __init__(self, source, images, family='gl-rank'):
        super(MatrixWitness, self).__init__(source, images)
        if family not in ('gl-rank', 'unitary'):
            raise InvalidParameter('Matrix witnesses use gl-rank or unitary, got %r' % family)
        dimensions = {a.dimension for a in self.images.values()}
        if len(dimensions) != 1:
            raise InvalidArgument('Images of mixed dimensions %s' % sorted(dimensions))
        self.degree = dimensions.pop()
        self.family = family
        if family == 'gl-rank' and not self.exponential:
            raise InvalidArgument('Rank witnesses need exponent-vector images')

    @cached_property
    def exponential(self):
        return all(isinstance(a, ExponentVectorMatrix) for a in self.images.values())

    @property
    def kind(self):
        return 'exponent' if self.exponential else 'unitary'

    @property
    def dimension(self):
        return self.degree

    @property
    def modulus(self):
        return next(iter(self.images.values())).modulus

    def distance(self, g, h):
        a, b = self.images[g], self.images[h]
        if self.family == 'gl-rank':
            return rank_distance(a, b)
        return hs_distance(a, b) / 2

    def _derive(self, transform):
        return MatrixWitness(self.source, {g: transform(a) for g, a in self.images.items()},
                             self.family)

    def as_dict(self):
        data = super(MatrixWitness, self).as_dict()
        data['family'] = self.family
        if self.exponential:
            data['modulus'] = self.modulus
        return data


### Permutation witnesses

def dilute(w, m_prime):
    """
    Extends every image by fixed points m+1..m'
    """
    if m_prime < w.degree:
        raise InvalidArgument('Cannot dilute degree %d to %d' % (w.degree, m_prime))
    tail = tuple(range(w.degree, m_prime))
    return PermWitness(w.source, {g: Permutation(tuple(a) + tail) for g, a in w.images.items()},
                       m_prime)


def replicate(w, k):
    """
    k disjoint copies on consecutive blocks of size m
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidArgument('Replication factor should be a positive integer, got %r' % (k,))
    m = w.degree
    images = {g: Permutation(x + i * m for i in range(k) for x in a)
              for g, a in w.images.items()}
    return PermWitness(w.source, images, k * m)


def amalgamate(w1, w2):
    """
    w1 on 1..m and w2 on m+1..m', so that d'' = (m d1 + (m' - m) d2) / m'
    """
    w1._check_fragment(w2)
    if not w2.degree:
        return w1
    if not w1.degree:
        return w2
    images = {g: Permutation(tuple(a) + w2.images[g].shifted(w1.degree))
              for g, a in w1.images.items()}
    return PermWitness(w1.source, images, w1.degree + w2.degree)


def _scales(eps, m0, n):
    """
    Smallest k with k m0 eps-share integral: returns (k, copies of the n-degree witness)
    """
    a, b = eps.numerator, eps.denominator
    for k in range(1, setting('SOFICLAB_SCALE_MAX') + 1):
        rest, remainder = divmod(k * m0 * b, a)
        if not remainder and not rest % n:
            return k, rest // n
    raise ResourceLimit('No integral degree split for eps=%s within %d copies'
                        % (eps, setting('SOFICLAB_SCALE_MAX')))


def _check_discrete(theta_prime):
    for g, h in theta_prime.pairs():
        if theta_prime.distance(g, h) != 1:
            raise InvalidArgument('Discrete witness has distance %s between %r and %r'
                                  % (theta_prime.distance(g, h), g, h))


def shift_amplify(theta, theta_prime, eps, tol=0, group=None):
    """
    Witness for the eps-shift of the metric theta approximates. The discrete witness
    theta_prime takes the share eps/(1+eps) of the points, copies of theta the rest.
    Deviations from the shifted distances of `group` (theta's own when None) are
    stored on the result as `deviation` and `within_tol`.
    """
    eps = rational(eps)
    if eps == 0 or theta_prime is None or not theta_prime.degree:
        result = replicate(theta, 1)
        targets = lambda g, h: (group or theta).distance(g, h)
    else:
        eps = check_epsilon(eps, upper=1)
        theta._check_fragment(theta_prime)
        _check_discrete(theta_prime)
        k, copies = _scales(eps, theta_prime.degree, theta.degree)
        result = amalgamate(replicate(theta_prime, k), replicate(theta, copies))
        base = group or theta
        targets = lambda g, h: (base.distance(g, h) + eps) / (1 + eps)
    return _with_deviation(result, targets, tol)


def _with_deviation(result, targets, tol):
    rows = distance_rows(result, targets)
    result.deviation = max((row['deviation'] for row in rows), default=Fraction(0))
    result.within_tol = bool(result.deviation <= tol)
    result.rows = rows
    return result


def distance_rows(witness, targets):
    rows = []
    encode = witness.source.encode
    for g, h in witness.pairs():
        distance, target = witness.distance(g, h), targets(g, h)
        rows.append({
            'g': encode(g), 'h': encode(h),
            'distance': distance, 'target': target,
            'deviation': abs(distance - target),
            'exact_match': bool(distance == target),
        })
    return rows


### Matrix witnesses

def tensor_replicate(w, k):
    """
    a -> a (x) I_k, preserving rank and normalized HS distances
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidArgument('Tensor factor should be a positive integer, got %r' % (k,))
    if w.exponential:
        return w._derive(lambda a: ExponentVectorMatrix(np.repeat(a.exponents, k), a.modulus))
    return w._derive(lambda a: NumericUnitary(np.kron(a.entries, np.eye(k))))


def block_dilute(w, m_prime):
    """
    a -> a (+) I_{m'-m}: rank distances scale by m/m', HS ones by sqrt(m/m')
    """
    if m_prime < w.degree:
        raise InvalidArgument('Cannot dilute dimension %d to %d' % (w.degree, m_prime))
    extra = m_prime - w.degree
    if w.exponential:
        return w._derive(lambda a: ExponentVectorMatrix(a.exponents + (0,) * extra, a.modulus))
    return w._derive(lambda a: NumericUnitary(block_diag(a.entries, np.eye(extra))))


def block_sum(w1, w2):
    """
    a -> a1 (+) a2, averaging rank distances (and squared HS distances) by dimension
    """
    w1._check_fragment(w2)
    if w1.family != w2.family:
        raise InvalidArgument('Cannot sum %s and %s witnesses' % (w1.family, w2.family))
    if w1.exponential and w2.exponential:
        if w1.modulus != w2.modulus:
            raise InvalidArgument('Moduli %d and %d differ' % (w1.modulus, w2.modulus))
        images = {g: ExponentVectorMatrix(a.exponents + w2.images[g].exponents, a.modulus)
                  for g, a in w1.images.items()}
    else:
        images = {g: NumericUnitary(block_diag(_entries(a), _entries(w2.images[g])))
                  for g, a in w1.images.items()}
    return MatrixWitness(w1.source, images, w1.family)


def _entries(a):
    return a.to_unitary().entries if isinstance(a, ExponentVectorMatrix) else a.entries


def linear_shift_amplify(theta, theta_prime, eps, companion=None, tol=0, group=None):
    """
    Witness for the omega-shift (d + eps d_omega) / (1 + eps) with rank metric images.
    theta approximates d (the metric of `group`, theta's own when None), theta_prime
    approximates d_omega (the metric of `companion`, theta_prime's own when None).
    """
    eps = rational(eps)
    base = group or theta
    if eps == 0 or theta_prime is None or not theta_prime.degree:
        return _with_deviation(tensor_replicate(theta, 1), base.distance, tol)

    eps = check_epsilon(eps)
    theta._check_fragment(theta_prime)
    if theta.family != 'gl-rank' or theta_prime.family != 'gl-rank':
        raise InvalidParameter('The linear shift works with rank metric witnesses')
    omega = companion or theta_prime
    if companion is not None:
        for g, h in theta_prime.pairs():
            if abs(theta_prime.distance(g, h) - companion.distance(g, h)) > tol:
                raise InvalidArgument('Companion witness is off d_omega at %r, %r' % (g, h))

    k, copies = _scales(eps, theta_prime.degree, theta.degree)
    result = block_sum(tensor_replicate(theta_prime, k), tensor_replicate(theta, copies))
    targets = lambda g, h: (base.distance(g, h) + eps * omega.distance(g, h)) / (1 + eps)
    return _with_deviation(result, targets, tol)


def fit_phase_shares(p, differences, squares):
    """
    Probability vector mu over exponents 0..p-1 making 1/2 d_HS(a^m, 1)^2, which is
    1/2 sum_j mu_j (1 - cos(2 pi j m / p)), closest to squares[i] at m = differences[i]
    in the sup norm. Returns (mu, residual).
    """
    j = np.arange(p)
    C = (1 - np.cos(2 * np.pi * np.outer(np.asarray(differences) % p, j) / p)) / 2
    rows = len(C)
    ones = np.ones((rows, 1))
    result = linprog(
        np.concatenate([np.zeros(p), [1.0]]),
        A_ub=np.vstack([np.hstack([C, -ones]), np.hstack([-C, -ones])]),
        b_ub=np.concatenate([squares, -np.asarray(squares)]),
        A_eq=np.concatenate([np.ones(p), [0.0]])[None, :], b_eq=[1.0],
        bounds=[(0, None)] * (p + 1),
        method='highs',
    )
    if result.status != 0:
        raise SoficlabError('LP solver failed fitting phase shares: %s' % result.message)
    mu = np.clip(result.x[:p], 0, None)
    return mu / mu.sum(), float(result.x[p])


def unitary_shift_amplify(theta, eps, copies=1, dimension=None, tol=None, group=None):
    """
    Witness for the eps-shift of the metric theta approximates, under 1/2 d_HS.

    Block sums squared distances with weights proportional to dimensions,
    d''^2 = (m d^2 + m' d'^2) / (m + m'), so theta' on m' coordinates should sit at
    d'^2 = ((m + m') d_eps^2 - m d^2) / m'. theta' is a diagonal power map g^k -> a'^k
    whose exponent shares are fitted to these squares and rounded to m' coordinates;
    targets outside the reach of order-p diagonal unitaries show up in `deviation`.
    theta is first tensored with I_copies, m' defaults to ceil(eps m).
    """
    eps = rational(eps)
    base = group or theta
    if tol is None:
        tol = setting('SOFICLAB_UNITARY_TOL')
    if theta.family != 'unitary':
        raise InvalidParameter('The unitary shift works with unitary witnesses')
    if eps == 0:
        return _with_deviation(tensor_replicate(theta, 1), base.distance, tol)

    eps = check_epsilon(eps, upper=1)
    source = theta.source
    if not isinstance(source, CyclicGroup):
        raise InvalidParameter('The unitary shift needs a cyclic source, got %s' % source.spec)
    theta = tensor_replicate(theta, copies)
    m = theta.degree
    m_prime = math.ceil(eps * m) if dimension is None else dimension
    if not isinstance(m_prime, int) or m_prime < 1:
        raise InvalidArgument('Dimension of theta\' should be a positive integer, got %r'
                              % (m_prime,))

    p = source.order
    targets = lambda g, h: (base.distance(g, h) + eps) / (1 + eps)
    pairs = theta.pairs()
    squares = [float(((m + m_prime) * targets(g, h) ** 2 - m * theta.distance(g, h) ** 2)
                     / m_prime) for g, h in pairs]
    if pairs:
        mu, residual = fit_phase_shares(p, [g - h for g, h in pairs], squares)
    else:
        mu, residual = np.eye(p)[0], 0.0

    a = ExponentVectorMatrix(np.repeat(np.arange(p), round_counts(mu, m_prime)), p)
    theta_prime = MatrixWitness(source, {g: a ** g for g in theta.fragment}, 'unitary')
    result = _with_deviation(block_sum(theta, theta_prime), targets, tol)
    result.theta_prime = theta_prime
    result.fit_residual = residual
    return result


### Witness files

def save_witness(w, path):
    data = w.as_dict()
    data['defect'] = w.defect().as_dict() if w.degree else None
    with open(path, 'w') as f:
        f.write(dump_json(data, indent=2))


def load_witness(path_or_data):
    from .specs import parse_group_spec

    if isinstance(path_or_data, dict):
        data = path_or_data
    else:
        with open(path_or_data) as f:
            data = json.load(f)
    try:
        source = parse_group_spec(data['source'])
        fragment = lmap(source.decode, data['fragment'])
        kind, images = data['kind'], data['images']
        if len(images) != len(fragment):
            raise SpecSyntaxError('Witness has %d images for %d elements'
                                  % (len(images), len(fragment)))
        if kind == 'permutation':
            decoded = [Permutation.from_images(a, one_based=True) for a in images]
            return PermWitness(source, zip(fragment, decoded), data.get('degree'))
        elif kind == 'exponent':
            decoded = [ExponentVectorMatrix(a, data['modulus']) for a in images]
        elif kind == 'unitary':
            decoded = [NumericUnitary([[complex(*z) for z in row] for row in a])
                       for a in images]
        else:
            raise SpecSyntaxError('Unknown witness kind %r' % kind)
        return MatrixWitness(source, zip(fragment, decoded), data.get('family', 'gl-rank'))
    except KeyError as e:
        raise SpecSyntaxError('Witness file misses field %s' % e)


def witness_summary(w):
    summary = {
        'degree': w.degree,
        'pairs': [{key: format_scalar(value) if key in ('distance', 'target', 'deviation')
                   else value for key, value in row.items()} for row in w.rows],
        'deviation': format_scalar(w.deviation),
        'within_tol': w.within_tol,
    }
    if hasattr(w, 'fit_residual'):
        summary['fit_residual'] = w.fit_residual
    return summary
