# -*- coding: utf-8 -*-
import math
from collections import deque
from itertools import permutations

import numpy as np
from funcy import cached_property, post_processing
from sympy import isprime

from .conf import setting
from .elements import Permutation, hamming_length, lee_length, hs_phase_distance
from .exceptions import InvalidArgument, InvalidParameter, ResourceLimit, ValidationFailure


__all__ = ('FiniteMetricGroup', 'CyclicGroup', 'SymmetricGroup', 'CyclicUnitaryGroup',
           'DerivedGroup', 'LengthGroup', 'SubGroup', 'LengthFunction',
           'make_cyclic_lee', 'make_symmetric_hamming', 'make_cyclic_unitary',
           'regular_embedding', 'make_regular', 'subgroup',
           'metric_from_length', 'length_from_metric', 'check_prime')


EXACT, NUMERIC = 'exact', 'numeric'


def check_prime(p, minimum=2):
    if not isinstance(p, int) or p < minimum or not isprime(p):
        raise InvalidParameter('Expected a prime >= %d, got %r' % (minimum, p))
    return p


class FiniteMetricGroup(object):
    """
    A finite group with a bi-invariant metric given by its invariant length function,
    d(g, h) = l(g h^-1).

    Subclasses provide identity, mul(), inv(), length() and either materialize the carrier
    in `elements` or leave it None and provide random_element() for sampling.
    """
    scalar_mode = EXACT
    spec = None
    identity = None

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def length(self, a):
        raise NotImplementedError

    def distance(self, a, b):
        return self.length(self.mul(a, self.inv(b)))

    def power(self, a, k):
        result = self.identity
        for _ in range(k):
            result = self.mul(result, a)
        return result

    @property
    def elements(self):
        return None

    @property
    def order(self):
        return len(self.elements)

    @property
    def is_materialized(self):
        return self.elements is not None

    def require_elements(self):
        if self.elements is None:
            raise ResourceLimit('Carrier of %s is not materialized (order %d)'
                                % (self.spec, self.order))
        return self.elements

    @cached_property
    def index(self):
        elements = self.require_elements()
        if len(elements) > setting('SOFICLAB_TABLE_MAX_ELEMENTS'):
            raise ResourceLimit('Carrier of %s is too large to index' % self.spec)
        return {g: i for i, g in enumerate(elements)}

    def __contains__(self, a):
        elements = self.elements
        if elements is not None and len(elements) <= setting('SOFICLAB_TABLE_MAX_ELEMENTS'):
            return a in self.index
        # Not listed, or too large to index
        return self._contains(a)

    def _contains(self, a):
        raise NotImplementedError

    def random_element(self, rng):
        elements = self.require_elements()
        return elements[rng.integers(len(elements))]

    def encode(self, a):
        return a

    def decode(self, value):
        if value not in self:
            raise InvalidArgument('%r is not an element of %s' % (value, self.spec))
        return value

    def __repr__(self):
        return '<%s %s>' % (self.__class__.__name__, self.spec)


class CyclicGroup(FiniteMetricGroup):
    identity = 0

    def __init__(self, p):
        if not isinstance(p, int) or p < 2:
            raise InvalidParameter('Cyclic order should be an integer >= 2, got %r' % (p,))
        self.p = p
        self.spec = 'cyclic:p=%d:metric=lee' % p

    @cached_property
    def elements(self):
        return tuple(range(self.p))

    def mul(self, a, b):
        return (a + b) % self.p

    def inv(self, a):
        return -a % self.p

    def power(self, a, k):
        return a * k % self.p

    def length(self, a):
        return lee_length(a, self.p)

    def _contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def decode(self, value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidArgument('%r is not an element of %s' % (value, self.spec))
        return super(CyclicGroup, self).decode(value)


class CyclicUnitaryGroup(CyclicGroup):
    """
    Z(p) acting through the diagonal unitary diag(w^j_1, ..., w^j_n), with metric 1/2 d_HS.
    """
    scalar_mode = NUMERIC

    def __init__(self, p, exponents):
        super(CyclicUnitaryGroup, self).__init__(p)
        self.exponents = np.asarray(exponents, dtype=int) % p
        if not self.exponents.size or not self.exponents.any():
            raise InvalidParameter('Need a non-trivial exponent vector')
        self.spec = 'unitary:p=%d:exponents=%s' % (p, ','.join(map(str, self.exponents)))

    def length(self, a):
        return hs_phase_distance(self.exponents * a % self.p, self.p) / 2


class SymmetricGroup(FiniteMetricGroup):
    def __init__(self, n):
        if not isinstance(n, int) or n < 1:
            raise InvalidParameter('Degree should be a positive integer, got %r' % (n,))
        self.n = n
        self.identity = Permutation.identity(n)
        self.spec = 'symmetric:n=%d:metric=hamming' % n

    @cached_property
    def elements(self):
        if self.n > setting('SOFICLAB_MATERIALIZE_MAX_DEGREE'):
            return None
        return tuple(Permutation(p) for p in permutations(range(self.n)))

    @property
    def order(self):
        return math.factorial(self.n)

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def power(self, a, k):
        return a ** k

    def length(self, a):
        return hamming_length(a)

    def _contains(self, a):
        return isinstance(a, Permutation) and len(a) == self.n

    def random_element(self, rng):
        return Permutation(int(i) for i in rng.permutation(self.n))

    def encode(self, a):
        return a.to_images()

    def decode(self, value):
        try:
            perm = Permutation.from_images(value, one_based=True)
        except (TypeError, ValueError):
            raise InvalidArgument('%r is not an element of %s' % (value, self.spec))
        return super(SymmetricGroup, self).decode(perm)


class DerivedGroup(FiniteMetricGroup):
    """
    Shares operations and carrier with a base group, redefines the length.
    """
    def __init__(self, base):
        self.base = base
        self.identity = base.identity
        self.scalar_mode = base.scalar_mode

    @property
    def elements(self):
        return self.base.elements

    @property
    def order(self):
        return self.base.order

    def mul(self, a, b):
        return self.base.mul(a, b)

    def inv(self, a):
        return self.base.inv(a)

    def power(self, a, k):
        return self.base.power(a, k)

    def length(self, a):
        return self.base.length(a)

    def __contains__(self, a):
        return a in self.base

    def random_element(self, rng):
        return self.base.random_element(rng)

    def encode(self, a):
        return self.base.encode(a)

    def decode(self, value):
        return self.base.decode(value)


class SubGroup(DerivedGroup):
    """
    An explicitly listed subgroup carrying the metric of its ambient group.
    """
    def __init__(self, base, elements, spec=None):
        super(SubGroup, self).__init__(base)
        self._elements = tuple(elements)
        self.spec = spec or 'subgroup(%s,order=%d)' % (base.spec, len(self._elements))

    @property
    def elements(self):
        return self._elements

    @property
    def order(self):
        return len(self._elements)

    def __contains__(self, a):
        return a in self.index

    def random_element(self, rng):
        return self._elements[rng.integers(len(self._elements))]

    def decode(self, value):
        element = self.base.decode(value)
        if element not in self:
            raise InvalidArgument('%r is not an element of %s' % (value, self.spec))
        return element


def subgroup(group, generators, spec=None):
    """
    Closure of generators under the group law
    """
    found = [group.identity]
    seen = {group.identity}
    queue = deque(found)
    while queue:
        a = queue.popleft()
        for g in generators:
            b = group.mul(a, g)
            if b not in seen:
                seen.add(b)
                found.append(b)
                queue.append(b)
    return SubGroup(group, found, spec=spec)


class LengthFunction(object):
    """
    An invariant length function on a group, l(1) = 0, l(g) = l(g^-1), l(gh) <= l(g) + l(h)
    """
    def __init__(self, group, func):
        self.group = group
        self.func = func

    def __call__(self, a):
        return self.func(a)

    @post_processing(dict)
    def table(self):
        for g in self.group.require_elements():
            yield g, self.func(g)


class LengthGroup(DerivedGroup):
    def __init__(self, base, length, spec=None):
        super(LengthGroup, self).__init__(base)
        self._length = length
        self.spec = spec or 'length(%s)' % base.spec

    def length(self, a):
        return self._length(a)


def metric_from_length(length, spec=None):
    """
    Builds the metric group d(g, h) = l(g h^-1), refusing lengths that break an axiom.
    """
    from .validation import validate_normed_group

    group = LengthGroup(length.group, length, spec=spec)
    report = validate_normed_group(group)
    if not report.ok:
        raise ValidationFailure('Not an invariant length function: %s' % report.summary(),
                                report=report)
    return group


def length_from_metric(group, metric=None):
    """
    Returns the length function l(g) = d(g, 1) of a bi-invariant metric.
    A metric which is not bi-invariant on the carrier is refused.
    """
    metric = metric or group.distance
    if group.is_materialized and group.order <= setting('SOFICLAB_EXHAUSTIVE_MAX_ELEMENTS'):
        elements = group.elements
        for g in elements:
            for h in elements:
                target = metric(g, h)
                for k in elements:
                    if metric(group.mul(k, g), group.mul(k, h)) != target \
                            or metric(group.mul(g, k), group.mul(h, k)) != target:
                        raise ValidationFailure(
                            'Metric is not bi-invariant: g=%r, h=%r, k=%r' % (
                                group.encode(g), group.encode(h), group.encode(k)))
    return LengthFunction(group, lambda a: metric(a, group.identity))


def make_cyclic_lee(p):
    check_prime(p, minimum=3)
    return CyclicGroup(p)

def make_symmetric_hamming(n):
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter('Degree should be a positive integer, got %r' % (n,))
    return SymmetricGroup(n)

def make_cyclic_unitary(p, exponents):
    check_prime(p, minimum=3)
    return CyclicUnitaryGroup(p, exponents)


def regular_embedding(group):
    """
    Left regular action g -> (x -> g x) on the carrier, an exact homomorphism into S_|G|
    whose non-identity images are fixed-point-free.
    """
    if not group.is_materialized or group.order > setting('SOFICLAB_TABLE_MAX_ELEMENTS'):
        raise ResourceLimit('Regular embedding needs a materialized carrier, %s has order %d'
                            % (group.spec, group.order))
    elements, index = group.elements, group.index
    return {g: Permutation(index[group.mul(g, x)] for x in elements) for g in elements}

def make_regular(group):
    """
    The image of the regular embedding as a subgroup of S_|G| with the Hamming metric
    """
    embedding = regular_embedding(group)
    return SubGroup(SymmetricGroup(group.order), embedding.values(),
                    spec='regular(%s)' % group.spec)
