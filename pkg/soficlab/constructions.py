# -*- coding: utf-8 -*-
"""
Derived metrics: the eps-shift, the omega-shift against a companion metric and the nested
metric on Z(p^s).
"""
from fractions import Fraction

from sympy import multiplicity

from .conf import setting
from .elements import lee_length
from .exceptions import InvalidParameter, ValidationFailure
from .groups import DerivedGroup, CyclicGroup, check_prime
from .utils import rational, format_rational


__all__ = ('ShiftedGroup', 'OmegaShiftedGroup', 'NestedCyclicGroup',
           'shift_metric', 'omega_shift_metric', 'make_nested_cyclic')


OMEGA_FLOOR = Fraction(1, 4)


def check_epsilon(eps, upper=None):
    try:
        eps = rational(eps)
    except (TypeError, ValueError):
        raise InvalidParameter('eps should be a rational, got %r' % (eps,))
    if eps <= 0 or upper is not None and eps > upper:
        raise InvalidParameter('eps should be in (0, %s], got %s'
                               % (upper or 'inf', format_rational(eps)))
    return eps


class ShiftedGroup(DerivedGroup):
    """
    d_eps(g, h) = (d(g, h) + eps) / (1 + eps) off the diagonal
    """
    def __init__(self, base, eps):
        super(ShiftedGroup, self).__init__(base)
        self.eps = check_epsilon(eps, upper=1)
        self.spec = 'shift(%s,eps=%s)' % (base.spec, format_rational(self.eps))

    @property
    def floor(self):
        return self.eps / (1 + self.eps)

    def length(self, a):
        if a == self.identity:
            return Fraction(0)
        return (self.base.length(a) + self.eps) / (1 + self.eps)


class OmegaShiftedGroup(DerivedGroup):
    """
    d(g, h) + eps * d_omega(g, h), renormalized by 1 + eps, off the diagonal.
    The companion metric lives on the same carrier and keeps distinct elements 1/4 apart.
    """
    def __init__(self, base, companion, eps):
        super(OmegaShiftedGroup, self).__init__(base)
        self.companion = companion
        self.eps = check_epsilon(eps)
        self.spec = 'omega-shift(%s,%s,eps=%s)' % (
            base.spec, companion.spec, format_rational(self.eps))

    @property
    def floor(self):
        return self.eps / (4 + 4 * self.eps)

    def length(self, a):
        if a == self.identity:
            return Fraction(0)
        return (self.base.length(a) + self.eps * self.companion.length(a)) / (1 + self.eps)


def shift_metric(group, eps):
    return ShiftedGroup(group, eps)


def omega_shift_metric(group, companion, eps):
    from .validation import validate_normed_group

    report = validate_normed_group(companion)
    if not report.ok:
        raise ValidationFailure('Companion metric is not bi-invariant: %s' % report.summary(),
                                report=report)

    elements = group.require_elements()
    low = [companion.encode(g) for g in elements
           if g != group.identity and companion.length(g) < OMEGA_FLOOR]
    if low:
        raise ValidationFailure('Companion metric goes below 1/4 off the diagonal at %s'
                                % low[:5], report=low)
    return OmegaShiftedGroup(group, companion, eps)


class NestedCyclicGroup(CyclicGroup):
    """
    Z(p^s) with the ultrametric-like nested metric: a difference of p-adic valuation v
    is at distance 1/2^v while v <= s - 2, and the bottom layer p^(s-1) Z(p^s) = Z(p)
    carries the Lee metric scaled by 1/2^(s-1).
    """
    def __init__(self, p, s):
        super(NestedCyclicGroup, self).__init__(p ** s)
        self.prime, self.s = p, s
        self.bottom = p ** (s - 1)
        self.spec = 'nested:p=%d:s=%d' % (p, s)

    def length(self, a):
        a %= self.p
        if not a:
            return Fraction(0)
        v = multiplicity(self.prime, a)
        if v <= self.s - 2:
            return Fraction(1, 2 ** v)
        return lee_length(a // self.bottom, self.prime) / 2 ** (self.s - 1)


def make_nested_cyclic(p, s):
    check_prime(p, minimum=3)
    if not isinstance(s, int) or s < 2:
        raise InvalidParameter('Nesting depth should be an integer >= 2, got %r' % (s,))
    if p ** s > setting('SOFICLAB_TABLE_MAX_ELEMENTS'):
        raise InvalidParameter('p^s = %d exceeds the carrier cap' % p ** s)
    return NestedCyclicGroup(p, s)
