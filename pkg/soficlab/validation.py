# -*- coding: utf-8 -*-
import math
from collections import namedtuple
from fractions import Fraction

import numpy as np
from funcy import cached_property, lmap

from .conf import setting
from .groups import NUMERIC, LengthGroup
from .signals import validation_failed


__all__ = ('ValidationReport', 'Violation', 'validate_normed_group')


WITNESS_LIMIT = 5

# Axiom labels used in reports
IDENTITY, SYMMETRY, TRIANGLE, FAITHFUL = '(i)', '(ii)', '(iii)', "(i')"
INVARIANCE, RANGE, CLOSURE = 'invariance', 'range', 'closure'

AXIOM_DESCRIPTIONS = {
    IDENTITY: 'l(1) = 0',
    SYMMETRY: 'l(g) = l(g^-1)',
    TRIANGLE: 'l(gh) <= l(g) + l(h)',
    FAITHFUL: 'l(g) = 0 only at the identity',
    INVARIANCE: 'l(h g h^-1) = l(g)',
    RANGE: '0 <= l(g) <= 1',
    CLOSURE: 'carrier closed under the group law',
}


Violation = namedtuple('Violation', 'axiom count witnesses')


class ValidationReport(object):
    def __init__(self, group, mode, checked, violations):
        self.group = group
        self.mode = mode
        self.checked = checked
        self.violations = violations

    @property
    def ok(self):
        return not self.violations

    @cached_property
    def failed_axioms(self):
        return [v.axiom for v in self.violations]

    def summary(self):
        if self.ok:
            return 'ok'
        return '; '.join('%s %s: %d violation(s), e.g. %s' % (
            v.axiom, AXIOM_DESCRIPTIONS[v.axiom], v.count, v.witnesses[0])
            for v in self.violations)

    def as_dict(self):
        return {
            'group': self.group.spec,
            'mode': self.mode,
            'scalar_mode': self.group.scalar_mode,
            'checked': self.checked,
            'ok': self.ok,
            'violations': [
                {'axiom': v.axiom, 'description': AXIOM_DESCRIPTIONS[v.axiom],
                 'count': v.count, 'witnesses': v.witnesses}
                for v in self.violations
            ],
        }

    def __repr__(self):
        return '<ValidationReport %s %s: %s>' % (self.group.spec, self.mode, self.summary())


def validate_normed_group(group, length=None, seed=0):
    """
    Checks the invariant length axioms of a group: (i), (ii), (iii), (i'), conjugation
    invariance and the diameter bound.

    Carriers up to SOFICLAB_EXHAUSTIVE_MAX_ELEMENTS are checked exhaustively through
    multiplication tables, larger or lazy ones over seeded random triples.
    """
    if length is not None:
        if isinstance(length, dict):
            length = length.__getitem__
        group = LengthGroup(group, length)

    if group.is_materialized and group.order <= setting('SOFICLAB_EXHAUSTIVE_MAX_ELEMENTS'):
        report = _validate_exhaustive(group)
    else:
        report = _validate_sampled(group, seed)

    if not report.ok:
        validation_failed.send(sender=validate_normed_group, group=group, report=report)
    return report


def _tolerance(group):
    return setting('SOFICLAB_UNITARY_TOL') if group.scalar_mode == NUMERIC else 0


def _length_array(group, values):
    """
    Returns (lengths, one) with exact values scaled to integers over a common denominator
    """
    if group.scalar_mode == NUMERIC:
        return np.array(values, dtype=float), 1.0
    values = [Fraction(v) for v in values]
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [v.numerator * (den // v.denominator) for v in values]
    bound = max(max(map(abs, ints)), den)
    dtype = np.int64 if bound < 2**60 else object
    return np.array(ints, dtype=dtype), den


def _violations(mask, make_witness):
    hits = np.argwhere(np.asarray(mask, dtype=bool))
    return len(hits), [make_witness(*map(int, hit)) for hit in hits[:WITNESS_LIMIT]]


def _validate_exhaustive(group):
    elements, index = group.elements, group.index
    encode = group.encode
    n = len(elements)

    try:
        mul = np.array([[index[group.mul(a, b)] for b in elements] for a in elements],
                       dtype=np.int64)
        inv = np.array([index[group.inv(a)] for a in elements], dtype=np.int64)
    except KeyError:
        violation = Violation(CLOSURE, 1, [])
        return ValidationReport(group, 'exhaustive', n, [violation])

    L, one = _length_array(group, lmap(group.length, elements))
    tol = _tolerance(group)
    e = index[group.identity]
    violations = []

    def add(axiom, mask, make_witness):
        count, witnesses = _violations(mask, make_witness)
        if count:
            violations.append(Violation(axiom, count, witnesses))

    single = lambda i: [encode(elements[i])]
    pair = lambda i, j: [encode(elements[i]), encode(elements[j])]

    add(IDENTITY, np.array([abs(L[e]) > tol]), lambda _: [encode(group.identity)])
    nonidentity = np.arange(n) != e
    add(FAITHFUL, nonidentity & (L <= tol), single)
    add(RANGE, (L < -tol) | (L > one + tol), single)
    add(SYMMETRY, abs(L - L[inv]) > tol, single)
    add(TRIANGLE, L[mul] > L[:, None] + L[None, :] + tol, pair)
    # conj[h, g] = h g h^-1
    conj = mul[mul, inv[:, None]]
    add(INVARIANCE, abs(L[conj] - L[None, :]) > tol, pair)

    return ValidationReport(group, 'exhaustive', n, violations)


def _validate_sampled(group, seed):
    rng = np.random.default_rng(seed)
    tol = _tolerance(group)
    samples = setting('SOFICLAB_VALIDATION_SAMPLES')
    length, encode = group.length, group.encode
    found = {}

    def add(axiom, *witness):
        count, witnesses = found.get(axiom, (0, []))
        if len(witnesses) < WITNESS_LIMIT:
            witnesses.append(lmap(encode, witness))
        found[axiom] = count + 1, witnesses

    if abs(length(group.identity)) > tol:
        add(IDENTITY, group.identity)

    for _ in range(samples):
        g, h, k = (group.random_element(rng) for _ in range(3))
        lg = length(g)
        if g != group.identity and lg <= tol:
            add(FAITHFUL, g)
        if lg < -tol or lg > 1 + tol:
            add(RANGE, g)
        if abs(lg - length(group.inv(g))) > tol:
            add(SYMMETRY, g)
        if length(group.mul(g, h)) > lg + length(h) + tol:
            add(TRIANGLE, g, h)
        if abs(length(group.mul(group.mul(k, g), group.inv(k))) - lg) > tol:
            add(INVARIANCE, k, g)

    order = [IDENTITY, SYMMETRY, TRIANGLE, FAITHFUL, INVARIANCE, RANGE]
    violations = [Violation(axiom, *found[axiom]) for axiom in order if axiom in found]
    return ValidationReport(group, 'sampled', samples, violations)
