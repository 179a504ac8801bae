# -*- coding: utf-8 -*-
"""
Concrete elements of the target families: permutations, diagonal order-p matrices
given by exponent vectors and numeric unitaries, together with their metrics.
"""
from collections import namedtuple
from fractions import Fraction

import numpy as np

from .conf import setting
from .exceptions import InvalidArgument, InvalidParameter


__all__ = ('Permutation', 'ExponentVectorMatrix', 'NumericUnitary',
           'lee_length', 'hamming_length', 'hamming_distance',
           'rank_length', 'rank_distance', 'hs_distance', 'hs_phase_distance')


class Permutation(tuple):
    """
    A permutation of {0, ..., n-1} stored as its tuple of images.
    Products compose as functions: (a * b)(i) == a(b(i)).
    """
    def __new__(cls, images):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_images(cls, images, one_based=False):
        images = [int(i) - 1 for i in images] if one_based else [int(i) for i in images]
        if sorted(images) != list(range(len(images))):
            raise InvalidArgument('Not a permutation: %r' % (images,))
        return cls(images)

    @classmethod
    def from_cycles(cls, degree, cycles):
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls.from_images(images)

    @property
    def degree(self):
        return len(self)

    def __mul__(self, other):
        if len(self) != len(other):
            raise InvalidArgument('Degree mismatch: %d and %d' % (len(self), len(other)))
        return Permutation(self[i] for i in other)

    def __rmul__(self, other):
        raise TypeError("Can't multiply %s by a permutation" % type(other).__name__)

    def inverse(self):
        images = [0] * len(self)
        for i, j in enumerate(self):
            images[j] = i
        return Permutation(images)

    __invert__ = inverse

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        result, base = Permutation.identity(len(self)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def fixed_points(self):
        return sum(1 for i, j in enumerate(self) if i == j)

    def moved_points(self):
        return len(self) - self.fixed_points()

    def is_identity(self):
        return self.fixed_points() == len(self)

    def shifted(self, offset):
        """
        The same action moved to positions offset, ..., offset + n - 1
        """
        return tuple(j + offset for j in self)

    def to_images(self):
        """
        1-based image list, the form used in witness files
        """
        return [j + 1 for j in self]

    def __repr__(self):
        return 'Permutation(%s)' % list(self)


def hamming_length(a):
    if not len(a):
        raise InvalidArgument('Hamming norm is undefined in degree 0')
    return Fraction(a.moved_points(), len(a))

def hamming_distance(a, b):
    """
    d_H(a, b) = 1 - |Fix(a^-1 b)| / n, i.e. the share of points where a and b differ
    """
    if len(a) != len(b):
        raise InvalidArgument('Degree mismatch: %d and %d' % (len(a), len(b)))
    if not len(a):
        raise InvalidArgument('Hamming distance is undefined in degree 0')
    return Fraction(sum(1 for x, y in zip(a, b) if x != y), len(a))


def lee_length(a, p):
    a %= p
    return Fraction(2 * min(a, p - a), p - 1)


class ExponentVectorMatrix(namedtuple('ExponentVectorMatrix', 'exponents modulus')):
    """
    The diagonal matrix diag(w^j_1, ..., w^j_n) with w a primitive p-th root of unity.
    The group law is entrywise addition of exponents mod p.
    """
    __slots__ = ()

    def __new__(cls, exponents, modulus):
        if modulus < 2:
            raise InvalidParameter('Modulus should be at least 2, got %r' % modulus)
        return super(ExponentVectorMatrix, cls).__new__(
            cls, tuple(int(j) % modulus for j in exponents), modulus)

    @classmethod
    def identity(cls, modulus, dimension):
        return cls((0,) * dimension, modulus)

    @property
    def dimension(self):
        return len(self.exponents)

    def _check(self, other):
        if self.modulus != other.modulus or self.dimension != other.dimension:
            raise InvalidArgument('Mismatch: Z(%d)^%d vs Z(%d)^%d' % (
                self.modulus, self.dimension, other.modulus, other.dimension))

    def __mul__(self, other):
        self._check(other)
        return ExponentVectorMatrix(
            [a + b for a, b in zip(self.exponents, other.exponents)], self.modulus)

    def inverse(self):
        return ExponentVectorMatrix([-a for a in self.exponents], self.modulus)

    def __pow__(self, k):
        return ExponentVectorMatrix([a * k for a in self.exponents], self.modulus)

    def phases(self):
        return 2 * np.pi * np.array(self.exponents, dtype=float) / self.modulus

    def to_unitary(self):
        return NumericUnitary(np.diag(np.exp(1j * self.phases())))


def rank_length(a):
    if not a.dimension:
        raise InvalidArgument('Rank norm is undefined in dimension 0')
    return Fraction(sum(1 for j in a.exponents if j), a.dimension)

def rank_distance(a, b):
    """
    rho(a, b) = rk(a - b) / n; for diagonal matrices the rank counts differing entries
    """
    a._check(b)
    if not a.dimension:
        raise InvalidArgument('Rank distance is undefined in dimension 0')
    return Fraction(sum(1 for x, y in zip(a.exponents, b.exponents) if x != y), a.dimension)


class NumericUnitary(object):
    __slots__ = ('entries',)

    def __init__(self, entries, tol=None):
        entries = np.asarray(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidArgument('A unitary should be a square matrix, got shape %s'
                                  % (entries.shape,))
        tol = setting('SOFICLAB_UNITARY_TOL') if tol is None else tol
        n = entries.shape[0]
        if n and not np.allclose(entries.conj().T @ entries, np.eye(n), rtol=0, atol=tol):
            raise InvalidArgument('Matrix is not unitary within %g' % tol)
        self.entries = entries

    @classmethod
    def identity(cls, dimension):
        return cls(np.eye(dimension))

    @classmethod
    def diagonal(cls, phases):
        return cls(np.diag(np.exp(1j * np.asarray(phases, dtype=float))))

    @property
    def dimension(self):
        return self.entries.shape[0]

    def __mul__(self, other):
        if self.dimension != other.dimension:
            raise InvalidArgument('Dimension mismatch: %d and %d'
                                  % (self.dimension, other.dimension))
        return NumericUnitary(self.entries @ other.entries)

    def inverse(self):
        return NumericUnitary(self.entries.conj().T)

    def __pow__(self, k):
        return NumericUnitary(np.linalg.matrix_power(self.entries, k))

    def __repr__(self):
        return 'NumericUnitary(%r)' % self.entries


def hs_distance(a, b):
    """
    Normalized Hilbert-Schmidt distance (sum |a_ij - b_ij|^2)^(1/2) / sqrt(n).
    The group metric used downstream is half of it.
    """
    if isinstance(a, ExponentVectorMatrix) and isinstance(b, ExponentVectorMatrix):
        a._check(b)
        return hs_phase_distance(np.array((a * b.inverse()).exponents), a.modulus)
    if a.dimension != b.dimension:
        raise InvalidArgument('Dimension mismatch: %d and %d' % (a.dimension, b.dimension))
    if not a.dimension:
        raise InvalidArgument('HS distance is undefined in dimension 0')
    return float(np.linalg.norm(a.entries - b.entries, 'fro') / np.sqrt(a.dimension))

def hs_phase_distance(exponents, p):
    """
    Closed form d_HS(a, id) = sqrt(2/n) * sqrt(sum_k 1 - cos(phi_k)), phi_k = 2 pi j_k / p
    """
    exponents = np.asarray(exponents, dtype=float)
    if not exponents.size:
        raise InvalidArgument('HS distance is undefined in dimension 0')
    phases = 2 * np.pi * exponents / p
    total = np.sum(1 - np.cos(phases))
    return float(np.sqrt(2.0 / exponents.size) * np.sqrt(max(total, 0.0)))
