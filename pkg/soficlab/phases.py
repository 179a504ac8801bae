# -*- coding: utf-8 -*-
"""
Diagonal order-p unitaries up to the Hilbert-Schmidt metric.

A diagonal unitary a with eigenvalues w^j (w = exp(2 pi i / p)) is determined, as far as
normalized distances go, by the share mu_j of eigenvalues w^j. Its powers satisfy

    d_HS(a^m, 1) = f_mu(m) = sqrt(2) * sqrt(sum_j mu_j (1 - cos(2 pi j m / p)))

and we look for the mu making 1/2 f_mu closest to the Lee length in the sup norm.
Only the folded weights w_j = mu_j + mu_{p-j}, j = 1..(p-1)/2, matter.
"""
import math
import warnings
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

from .cache import cached
from .conf import setting
from .exceptions import InvalidParameter, SoficlabError
from .groups import check_prime


__all__ = ('PhaseDistribution', 'PhaseOptimum', 'phase_profile', 'phase_distribution_optimize',
           'lee_targets', 'grid_size', 'effective_resolution')


BISECTION_TOL = 1e-10
LP_SLACK = 1e-12


def lee_targets(p):
    """
    l_Lee(m) for m = 1..(p-1)/2
    """
    return np.array([2.0 * m / (p - 1) for m in range(1, (p - 1) // 2 + 1)])


def cosine_matrix(p):
    """
    C[j-1, m-1] = 1 - cos(2 pi j m / p) for j, m = 1..(p-1)/2
    """
    h = (p - 1) // 2
    jm = np.outer(np.arange(1, h + 1), np.arange(1, h + 1))
    return 1 - np.cos(2 * np.pi * jm / p)


class PhaseDistribution(object):
    """
    Probability vector mu over the exponents 1..p-1
    """
    def __init__(self, p, weights):
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (p - 1,):
            raise InvalidParameter('Expected %d weights, got shape %s' % (p - 1, weights.shape))
        if (weights < -LP_SLACK).any() or abs(weights.sum() - 1) > 1e-9:
            raise InvalidParameter('Weights should form a probability vector')
        self.p = p
        self.weights = np.clip(weights, 0, None) / np.clip(weights, 0, None).sum()

    @classmethod
    def from_folded(cls, p, folded):
        """
        Splits every folded weight evenly between j and p - j
        """
        folded = np.asarray(folded, dtype=float)
        weights = np.concatenate([folded, folded[::-1]]) / 2
        return cls(p, weights)

    @classmethod
    def concentrated(cls, p, k):
        weights = np.zeros(p - 1)
        weights[k - 1] = 1
        return cls(p, weights)

    def folded(self):
        h = (self.p - 1) // 2
        return self.weights[:h] + self.weights[::-1][:h]

    def profile(self):
        """
        f_mu(m) for m = 1..p-1
        """
        m = np.arange(1, self.p)
        j = np.arange(1, self.p)
        terms = 1 - np.cos(2 * np.pi * np.outer(m, j) / self.p)
        return np.sqrt(2) * np.sqrt(np.clip(terms @ self.weights, 0, None))

    def objective(self):
        return folded_objective(self.p, self.folded())

    def as_dict(self):
        return {'p': self.p, 'weights': [float(w) for w in self.weights]}


def phase_profile(mu, m):
    return float(mu.profile()[m % mu.p - 1]) if m % mu.p else 0.0


def folded_values(p, folded):
    """
    Objective of every row of a folded weight matrix
    """
    x = np.atleast_2d(folded) @ cosine_matrix(p)
    return np.abs(lee_targets(p) - np.sqrt(np.clip(x, 0, None) / 2)).max(axis=1)

def folded_objective(p, folded):
    return float(folded_values(p, folded)[0])


### Coarse grid

def grid_size(h, resolution):
    return math.comb(resolution + h - 1, h - 1)

def effective_resolution(h, resolution):
    """
    Largest resolution not above the requested one with a grid under the point cap
    """
    cap = setting('SOFICLAB_GRID_MAX_POINTS')
    while resolution > 1 and grid_size(h, resolution) > cap:
        resolution -= 1
    return resolution

def simplex_grid(h, resolution):
    """
    All folded weight vectors with coordinates in (1/resolution) Z, lexicographic in bars
    """
    if h == 1:
        return np.ones((1, 1))
    bars = np.array(list(combinations(range(resolution + h - 1), h - 1)), dtype=int)
    n = len(bars)
    edges = np.hstack([np.full((n, 1), -1), bars, np.full((n, 1), resolution + h - 1)])
    return (np.diff(edges, axis=1) - 1) / resolution


### Refinement

def feasible(p, t):
    """
    Folded weights with |l_Lee(m) - 1/2 f(m)| <= t for all m, or None.
    A linear program since the constraint reads 2 (l - t)_+^2 <= x_m <= 2 (l + t)^2.
    """
    targets = lee_targets(p)
    C = cosine_matrix(p).T
    h = len(targets)
    lower = 2 * np.clip(targets - t, 0, None) ** 2
    upper = 2 * (targets + t) ** 2
    result = linprog(
        np.zeros(h),
        A_ub=np.vstack([C, -C]),
        b_ub=np.concatenate([upper, -lower]),
        A_eq=np.ones((1, h)), b_eq=[1.0],
        bounds=[(0, None)] * h,
        method='highs',
    )
    if result.status == 0:
        return np.clip(result.x, 0, None) / np.clip(result.x, 0, None).sum()
    if result.status == 2:
        return None
    raise SoficlabError('LP solver failed at t=%g: %s' % (t, result.message))


def bisect_floor(p, high, folded_high):
    """
    Bisection on the minimax value; low stays infeasible, high stays attained
    """
    low = 0.0
    if feasible(p, low) is not None:
        return 0.0, folded_high
    while high - low > BISECTION_TOL:
        middle = (low + high) / 2
        folded = feasible(p, middle)
        if folded is None:
            low = middle
        else:
            high, folded_high = middle, folded
    return low, folded_high


class PhaseOptimum(object):
    """
    Best phase distribution found with its evidence: the coarse grid optimum and
    the bisection bracket [lower_bound, floor] of the true minimum.
    """
    def __init__(self, mu, floor, lower_bound, grid_best, resolution, effective_resolution,
                 covering_radius, grid_points, sampled_best):
        self.mu = mu
        self.floor = floor
        self.lower_bound = lower_bound
        self.grid_best = grid_best
        self.resolution = resolution
        self.effective_resolution = effective_resolution
        self.covering_radius = covering_radius
        self.grid_points = grid_points
        self.sampled_best = sampled_best

    @property
    def p(self):
        return self.mu.p

    def as_dict(self):
        return {
            'mu': self.mu.as_dict(),
            'floor': self.floor,
            'lower_bound': self.lower_bound,
            'grid_best': self.grid_best,
            'resolution': self.resolution,
            'effective_resolution': self.effective_resolution,
            'covering_radius': self.covering_radius,
            'grid_points': self.grid_points,
            'sampled_best': self.sampled_best,
        }


@cached(depends_on=('SOFICLAB_GRID_MAX_POINTS',))
def phase_distribution_optimize(p, grid_resolution=100, seed=0, samples=1000):
    check_prime(p, minimum=3)
    if not isinstance(grid_resolution, int) or grid_resolution < 10:
        raise InvalidParameter('Grid resolution should be an integer >= 10, got %r'
                               % (grid_resolution,))
    h = (p - 1) // 2

    resolution = effective_resolution(h, grid_resolution)
    if resolution < grid_resolution:
        warnings.warn('Grid resolution lowered from %d to %d to fit %d points'
                      % (grid_resolution, resolution, setting('SOFICLAB_GRID_MAX_POINTS')),
                      RuntimeWarning)
    grid = simplex_grid(h, resolution)
    values = folded_values(p, grid)
    best = int(np.argmin(values))
    grid_best = float(values[best])

    lower_bound, folded = bisect_floor(p, grid_best, grid[best])
    floor = folded_objective(p, folded)
    if floor > grid_best:
        folded, floor = grid[best], grid_best

    rng = np.random.default_rng(seed)
    sampled = rng.dirichlet(np.ones(h), size=samples) if samples else np.ones((1, h)) / h
    sampled_best = float(folded_values(p, sampled).min())

    return PhaseOptimum(
        mu=PhaseDistribution.from_folded(p, folded),
        floor=floor,
        lower_bound=lower_bound,
        grid_best=grid_best,
        resolution=grid_resolution,
        effective_resolution=resolution,
        covering_radius=h / resolution,
        grid_points=len(grid),
        sampled_best=sampled_best,
    )
