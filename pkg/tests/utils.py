"""
Independent oracles: sympy permutations and brute force enumerations
"""
from fractions import Fraction
from itertools import permutations

from sympy.combinatorics import Permutation as SymPermutation

from soficlab import Permutation


def sympy_compose(a, b):
    """
    Images of x -> a(b(x)); sympy multiplies left to right
    """
    return tuple((SymPermutation(list(b)) * SymPermutation(list(a))).array_form)


def moved(a, b):
    return sum(1 for x, y in zip(a, b) if x != y)


def lee(a, p):
    a %= p
    return Fraction(2 * min(a, p - a), p - 1)


def brute_cyclic_defect(p, n):
    """
    Least max |d_Lee(i, j) - d_H(s^i, s^j)| over all permutations s of degree n with s^p = 1
    """
    best = None
    identity = tuple(range(n))
    for images in permutations(range(n)):
        powers = [identity]
        for _ in range(p - 1):
            powers.append(tuple(images[x] for x in powers[-1]))
        if tuple(images[x] for x in powers[-1]) != identity:
            continue
        value = max(abs(lee(i - j, p) - Fraction(moved(powers[i], powers[j]), n))
                    for i in range(p) for j in range(i + 1, p))
        if best is None or value < best:
            best = value
    return best


def random_order_p_permutation(rng, p, n):
    """
    A product of 1..n//p disjoint random p-cycles in S_n
    """
    points = [int(x) for x in rng.permutation(n)]
    count = int(rng.integers(1, n // p + 1))
    cycles = [points[k * p:(k + 1) * p] for k in range(count)]
    return Permutation.from_cycles(n, cycles)
