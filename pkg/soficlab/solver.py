# -*- coding: utf-8 -*-
"""
Approximation problems for finite metric groups: given a fragment F of a source group and a
target family, find a map gamma from F into S_n (or GL_n, U(n)) that is almost a homomorphism
and almost preserves the metric (metric mode), or almost a homomorphism keeping every length
above a prescribed alpha (alpha mode).
"""
import json
from collections import namedtuple
from fractions import Fraction

import numpy as np
from funcy import cached_property, lmap, post_processing
from sympy import isprime

from .conf import setting
from .elements import (Permutation, ExponentVectorMatrix, NumericUnitary,
                       hamming_distance, rank_distance, hs_distance)
from .exceptions import InvalidArgument, InvalidParameter, ResourceLimit, SpecSyntaxError
from .groups import CyclicGroup, make_cyclic_lee, regular_embedding
from .phases import effective_resolution, phase_distribution_optimize
from .signals import witness_found, search_finished
from .utils import rational, format_rational, format_scalar, parallel_map


__all__ = ('Target', 'ApproxInstance', 'Defect', 'Witness', 'NoWitness',
           'defect', 'solve', 'solve_exhaustive_cyclic', 'solve_diagonal_cyclic',
           'solve_local_search', 'solve_discrete',
           'parse_target', 'parse_instance', 'load_instance', 'DEFAULT_BUDGET')


METRIC, ALPHA = 'metric', 'alpha'
DEFAULT_BUDGET = (16, 400)
# Restarts are run in batches of this size, stopping after the first batch with a witness
RESTART_BATCH = 8
PHASE_RESOLUTION = 100


### Targets

TARGET_ALIASES = {'general-linear-rank': 'gl-rank'}

def _unitary_distance(a, b):
    return hs_distance(a, b) / 2

FAMILY_DISTANCES = {
    'symmetric': hamming_distance,
    'gl-rank': rank_distance,
    'unitary': _unitary_distance,
}


class Target(namedtuple('Target', 'family n')):
    __slots__ = ()

    @property
    def distance(self):
        return FAMILY_DISTANCES[self.family]

    def identity_like(self, a):
        if isinstance(a, Permutation):
            return Permutation.identity(len(a))
        elif isinstance(a, ExponentVectorMatrix):
            return ExponentVectorMatrix.identity(a.modulus, a.dimension)
        return NumericUnitary.identity(a.dimension)

    def length(self, a):
        return self.distance(a, self.identity_like(a))

    def __str__(self):
        return '%s:%d' % (self.family, self.n)


def parse_target(text):
    family, sep, n = text.strip().partition(':')
    family = TARGET_ALIASES.get(family, family)
    if family not in FAMILY_DISTANCES or not sep:
        raise SpecSyntaxError('Expected symmetric:n, unitary:n or gl-rank:n, got %r' % text)
    try:
        n = int(n)
    except ValueError:
        raise SpecSyntaxError('Bad target dimension in %r' % text)
    if n < 1:
        raise InvalidParameter('Target dimension should be positive, got %d' % n)
    return Target(family, n)


### Instances

class ApproxInstance(object):
    """
    A finite fragment F of a source metric group, a target family and a tolerance delta.
    In alpha mode `alpha` maps fragment elements to required lengths bounded by `bound`.
    """
    def __init__(self, source, target, delta, fragment=None, mode=METRIC, alpha=None,
                 bound=1, seed=0, budget=DEFAULT_BUDGET, method=None):
        self.source = source
        self.target = parse_target(target) if isinstance(target, str) else target
        self.fragment = tuple(source.require_elements() if fragment is None else fragment)
        for g in self.fragment:
            if g not in source:
                raise InvalidArgument('%r is not an element of %s' % (g, source.spec))
        if len(set(self.fragment)) != len(self.fragment):
            raise InvalidArgument('Fragment has repeated elements')

        self.delta = rational(delta)
        if not self.delta > 0:
            raise InvalidParameter('delta should be positive, got %s' % delta)
        if mode not in (METRIC, ALPHA):
            raise InvalidParameter('Unknown mode %r' % mode)
        self.mode = mode
        if mode == ALPHA and alpha is None:
            raise InvalidParameter('alpha mode needs an alpha map')
        if isinstance(alpha, dict):
            alpha = alpha.__getitem__
        self.alpha = alpha
        self.bound = rational(bound)
        self.seed = seed
        self.budget = tuple(budget)
        self.method = method

    @cached_property
    def index(self):
        return {g: i for i, g in enumerate(self.fragment)}

    @cached_property
    def distances(self):
        d = self.source.distance
        return [[d(g, h) for h in self.fragment] for g in self.fragment]

    @cached_property
    def products(self):
        """
        Triples (i, j, k) with f_i f_j = f_k inside the fragment
        """
        index, mul = self.index, self.source.mul
        return [(i, j, index[mul(g, h)])
                for i, g in enumerate(self.fragment)
                for j, h in enumerate(self.fragment)
                if mul(g, h) in index]

    @cached_property
    def identity_index(self):
        return self.index.get(self.source.identity)

    @cached_property
    def alpha_values(self):
        return lmap(self.alpha, self.fragment) if self.mode == ALPHA else None

    def config(self):
        return {
            'source': self.source.spec,
            'fragment': lmap(self.source.encode, self.fragment),
            'target': str(self.target),
            'delta': format_scalar(self.delta),
            'mode': self.mode,
            'seed': self.seed,
            'budget': '%dx%d' % self.budget,
            'method': self.method,
        }


### Defects

class Defect(namedtuple('Defect', 'hom_defect identity_defect metric_defect alpha_defect')):
    __slots__ = ()

    @property
    def components(self):
        return [c for c in self if c is not None]

    @property
    def value(self):
        return max(self.components)

    def accepts(self, delta):
        if self.alpha_defect is not None:
            return self.hom_defect < delta and self.identity_defect < delta \
                and self.alpha_defect == 0
        return all(c < delta for c in self.components)

    @post_processing(dict)
    def as_dict(self):
        for name, value in zip(self._fields, self):
            if value is not None:
                yield name, format_scalar(value)


def _max(values):
    return max(values, default=Fraction(0))


def defect(gamma, instance):
    """
    The defect of a map gamma: F -> target. Exact for exact sources and targets.
    """
    missing = [g for g in instance.fragment if g not in gamma]
    if missing:
        raise InvalidArgument('gamma is not defined on %s' % lmap(instance.source.encode,
                                                                     missing[:5]))
    images = [gamma[g] for g in instance.fragment]
    distance = instance.target.distance

    hom = _max(distance(images[k], images[i] * images[j]) for i, j, k in instance.products)
    e = instance.identity_index
    ident = instance.target.length(images[e]) if e is not None else Fraction(0)

    if instance.mode == METRIC:
        table = instance.distances
        metric = _max(abs(table[i][j] - distance(images[i], images[j]))
                      for i in range(len(images)) for j in range(i + 1, len(images)))
        return Defect(hom, ident, metric, None)
    else:
        length = instance.target.length
        alpha = _max(max(a - length(x), 0) for a, x in zip(instance.alpha_values, images))
        return Defect(hom, ident, None, alpha)


### Results

class Witness(object):
    found = True

    def __init__(self, instance, gamma, defect, method, restart=None, extra=None):
        self.instance = instance
        self.gamma = gamma
        self.defect = defect
        self.method = method
        self.restart = restart
        self.extra = extra or {}

    @property
    def best_defect(self):
        return self.defect

    def verify(self):
        return defect(self.gamma, self.instance) == self.defect

    def as_dict(self):
        encode = self.instance.source.encode
        return dict({
            'found': self.found,
            'method': self.method,
            'restart': self.restart,
            'defect': self.defect.as_dict(),
            'value': format_scalar(self.defect.value),
            'gamma': [[encode(g), encode_image(self.gamma[g])] for g in self.instance.fragment],
        }, **self.extra)


class NoWitness(Witness):
    """
    Best map found when none was accepted; `best_defect` is its defect
    """
    found = False


def encode_image(a):
    if isinstance(a, Permutation):
        return a.to_images()
    elif isinstance(a, ExponentVectorMatrix):
        return list(a.exponents)
    return [[[z.real, z.imag] for z in row] for row in a.entries]


def _result(instance, gamma, method, restart=None, extra=None):
    d = defect(gamma, instance)
    if d.accepts(instance.delta):
        witness = Witness(instance, gamma, d, method, restart, extra)
        witness_found.send(sender=Witness, instance=instance, witness=witness, method=method)
        return witness
    return NoWitness(instance, gamma, d, method, restart, extra)


### Exhaustive search over exact cyclic actions

def fixed_point_table(source, n, counts=None):
    """
    (c, t, value) per admissible count c of fixed points (or zero exponents), where
    t = (n - c) / n is the common distance between distinct powers and value the worst
    deviation from the lengths of the cyclic source.
    """
    p = source.order
    lengths = [source.length(m) for m in range(1, p)]
    low, high = min(lengths), max(lengths)
    table = []
    for c in range(n % p, n + 1, p) if counts is None else counts:
        t = Fraction(n - c, n)
        table.append((c, t, max(abs(t - low), abs(high - t))))
    return table


def cyclic_permutation(p, n, c):
    """
    Product of (n - c) / p disjoint p-cycles, fixing the last c points
    """
    cycles = [list(range(start, start + p)) for start in range(0, n - c, p)]
    return Permutation.from_cycles(n, cycles)


def solve_exhaustive_cyclic(p, n, source=None, delta=Fraction(1)):
    """
    Best map g^m -> sigma^m over order-p permutations sigma of degree n.

    Distinct powers of such sigma are all at Hamming distance t = (n - c) / n from each
    other, c the number of fixed points, so it is enough to enumerate c with p | n - c.
    """
    source = source or make_cyclic_lee(p)
    if not isinstance(source, CyclicGroup) or source.order != p:
        raise InvalidParameter('Exhaustive cyclic search needs a metric on Z(%d)' % p)
    if n > setting('SOFICLAB_EXHAUSTIVE_MAX_DEGREE'):
        raise ResourceLimit('Degree %d exceeds the exhaustive search budget' % n)

    instance = ApproxInstance(source, Target('symmetric', n), delta,
                              method='exhaustive-cyclic')
    table = fixed_point_table(source, n)
    c = min(table, key=lambda row: row[2])[0]
    sigma = cyclic_permutation(p, n, c)
    gamma = {m: sigma ** m for m in range(p)}

    extra = {
        'fixed_points': c,
        'table': [{'c': c, 't': format_rational(t), 'defect': format_rational(v)}
                  for c, t, v in table],
    }
    result = _result(instance, gamma, 'exhaustive-cyclic', extra=extra)
    result.table = table
    search_finished.send(sender=solve_exhaustive_cyclic, instance=instance,
                         best_defect=result.defect, method='exhaustive-cyclic', restarts=1)
    return result


def round_counts(weights, n):
    """
    Integer counts summing to n closest to n * weights, by largest remainder
    """
    raw = np.asarray(weights, dtype=float) * n
    counts = np.floor(raw).astype(int)
    rest = n - int(counts.sum())
    counts[np.argsort(counts - raw, kind='stable')[:rest]] += 1
    return counts


def _phase_candidates(p, n):
    """
    (label, exponent vector) pairs: every concentrated phase, then the optimized
    phase distribution rounded to n coordinates
    """
    for k in range(1, max((p - 1) // 2, 1) + 1):
        yield 'concentrated:%d' % k, (k,) * n
    h = (p - 1) // 2
    if p >= 3 and isprime(p) and effective_resolution(h, PHASE_RESOLUTION) >= 10:
        optimum = phase_distribution_optimize(p, effective_resolution(h, PHASE_RESOLUTION))
        counts = round_counts(optimum.mu.weights, n)
        yield 'optimized', tuple(np.repeat(np.arange(1, p), counts))


def solve_diagonal_cyclic(instance):
    """
    Best map g^m -> a^m over diagonal order-p matrices a, for GL_n targets
    under the rank metric and U(n) targets under 1/2 d_HS.

    Under the rank metric distinct powers of a sit at (n - c) / n from each other,
    c the number of zero exponents, and every c in 0..n is admissible. Under the HS metric
    only the shares of the exponents matter, and candidates come from the phase optimizer.
    """
    source, target = instance.source, instance.target
    if not isinstance(source, CyclicGroup):
        raise InvalidParameter('Diagonal search needs a cyclic source, got %s' % source.spec)
    if target.family not in ('gl-rank', 'unitary'):
        raise InvalidParameter('Diagonal search needs a gl-rank or unitary target')
    p, n = source.order, target.n
    if n > setting('SOFICLAB_EXHAUSTIVE_MAX_DEGREE'):
        raise ResourceLimit('Dimension %d exceeds the exhaustive search budget' % n)

    extra = {}
    if target.family == 'gl-rank':
        if instance.mode == METRIC:
            table = fixed_point_table(source, n, counts=range(n + 1))
            c = min(table, key=lambda row: row[2])[0]
            extra['table'] = [{'c': c, 't': format_rational(t), 'defect': format_rational(v)}
                              for c, t, v in table]
        else:
            c = 0
        extra['zero_exponents'] = c
        candidates = [('ones:%d' % (n - c), (1,) * (n - c) + (0,) * c)]
    else:
        candidates = list(_phase_candidates(p, n))

    best = None
    for label, exponents in candidates:
        a = ExponentVectorMatrix(exponents, p)
        gamma = {g: a ** g for g in instance.fragment}
        value = defect(gamma, instance).value
        if best is None or value < best[0]:
            best = (value, label, a, gamma)
    _, label, a, gamma = best

    extra.update(candidate=label, exponent_counts=np.bincount(a.exponents, minlength=p).tolist())
    result = _result(instance, gamma, 'diagonal-cyclic', extra=extra)
    search_finished.send(sender=solve_diagonal_cyclic, instance=instance,
                         best_defect=result.defect, method='diagonal-cyclic',
                         restarts=len(candidates))
    return result


### Local search

def transpose_values(images, a, b):
    """
    (a b) * sigma
    """
    return Permutation(b if x == a else a if x == b else x for x in images)

def transpose_positions(images, a, b):
    """
    sigma * (a b)
    """
    images = list(images)
    images[a], images[b] = images[b], images[a]
    return Permutation(images)


def dilute_permutation(a, n):
    return Permutation(tuple(a) + tuple(range(len(a), n)))


class SearchState(object):
    """
    Defect contributions of a map kept per fragment pair and product,
    so that changing one image only recomputes the entries it takes part in.
    """
    def __init__(self, instance, images):
        self.instance = instance
        self.images = list(images)
        self.distance = instance.target.distance
        k = len(images)
        self.products = instance.products
        self.involved = [[t for t, (i, j, l) in enumerate(self.products) if m in (i, j, l)]
                         for m in range(k)]
        self.hom = [self._hom(t) for t in range(len(self.products))]
        if instance.mode == METRIC:
            self.metric = [[self._metric(i, j) if i != j else Fraction(0) for j in range(k)]
                           for i in range(k)]
        else:
            self.alpha = [self._alpha(i) for i in range(k)]

    def _hom(self, t):
        i, j, l = self.products[t]
        return self.distance(self.images[l], self.images[i] * self.images[j])

    def _metric(self, i, j):
        return abs(self.instance.distances[i][j] - self.distance(self.images[i], self.images[j]))

    def _alpha(self, i):
        return max(self.instance.alpha_values[i] - self.instance.target.length(self.images[i]),
                   0)

    def defect(self):
        e = self.instance.identity_index
        ident = self.instance.target.length(self.images[e]) if e is not None else Fraction(0)
        if self.instance.mode == METRIC:
            metric = _max(max(row) for row in self.metric)
            return Defect(_max(self.hom), ident, metric, None)
        return Defect(_max(self.hom), ident, None, _max(self.alpha))

    def change(self, m, image):
        """
        Sets image of fragment element m, returns a callable undoing the change
        """
        old_image = self.images[m]
        old_hom = [(t, self.hom[t]) for t in self.involved[m]]
        self.images[m] = image
        for t in self.involved[m]:
            self.hom[t] = self._hom(t)

        if self.instance.mode == METRIC:
            old_row = list(self.metric[m])
            for j in range(len(self.images)):
                if j != m:
                    self.metric[m][j] = self.metric[j][m] = self._metric(m, j)
        else:
            old_alpha = self.alpha[m]
            self.alpha[m] = self._alpha(m)

        def undo():
            self.images[m] = old_image
            for t, value in old_hom:
                self.hom[t] = value
            if self.instance.mode == METRIC:
                for j, value in enumerate(old_row):
                    self.metric[m][j] = self.metric[j][m] = value
            else:
                self.alpha[m] = old_alpha
        return undo


def warm_starts(instance):
    """
    Natural inclusion of permutation sources, the best power map of cyclic sources
    and the regular embedding, diluted to degree n
    """
    n = instance.target.n
    fragment = instance.fragment
    starts = []
    if all(isinstance(g, Permutation) and len(g) <= n for g in fragment):
        starts.append([dilute_permutation(g, n) for g in fragment])
    source = instance.source
    if isinstance(source, CyclicGroup):
        table = fixed_point_table(source, n)
        sigma = cyclic_permutation(source.order, n, min(table, key=lambda row: row[2])[0])
        starts.append([sigma ** g for g in fragment])
    if source.is_materialized and source.order <= n:
        embedding = regular_embedding(source)
        starts.append([dilute_permutation(embedding[g], n) for g in fragment])
    return starts


def _random_images(instance, rng):
    n = instance.target.n
    identity = instance.source.identity
    return [Permutation.identity(n) if g == identity
            else Permutation(int(x) for x in rng.permutation(n))
            for g in instance.fragment]


def _run_restart(instance, seed, restart, starts, steps):
    rng = np.random.default_rng([seed, restart])
    images = starts[restart] if restart < len(starts) else _random_images(instance, rng)
    state = SearchState(instance, images)
    current = state.defect()
    n, k = instance.target.n, len(images)

    for _ in range(steps):
        if current.accepts(instance.delta) or n < 2:
            break
        m = int(rng.integers(k))
        a, b = (int(x) for x in rng.choice(n, 2, replace=False))
        move = transpose_values if rng.integers(2) else transpose_positions
        undo = state.change(m, move(state.images[m], a, b))
        candidate = state.defect()
        if candidate.value <= current.value:
            current = candidate
        else:
            undo()
    # Only non-worsening moves are kept, so the final state is the best one
    return current.value, restart, list(state.images)


def solve_local_search(instance, budget=None, seed=None):
    """
    Random-restart local search over maps into S_n. Each restart starts from a warm start
    or a seeded random map, and moves by composing one image with a transposition on either
    side, keeping moves that do not increase the max of the defect components.
    """
    if instance.target.family != 'symmetric':
        raise InvalidParameter('Local search works with symmetric targets only')
    restarts, steps = budget or instance.budget
    seed = instance.seed if seed is None else seed
    if restarts < 1 or steps < 0:
        raise InvalidParameter('Bad budget %sx%s' % (restarts, steps))

    # Fill lazy tables before restarts share the instance across threads
    instance.products, instance.distances, instance.alpha_values
    starts = warm_starts(instance)
    results = []
    for batch in range(0, restarts, RESTART_BATCH):
        indexes = range(batch, min(batch + RESTART_BATCH, restarts))
        results.extend(parallel_map(
            lambda r: _run_restart(instance, seed, r, starts, steps), indexes))
        best = min(results, key=lambda result: result[:2])
        gamma = dict(zip(instance.fragment, best[2]))
        if defect(gamma, instance).accepts(instance.delta):
            break

    method = 'discrete' if instance.mode == ALPHA else 'local'
    result = _result(instance, gamma, method, restart=best[1],
                     extra={'seed': seed, 'restarts_run': len(results)})
    search_finished.send(sender=solve_local_search, instance=instance,
                         best_defect=result.defect, method=method, restarts=len(results))
    return result


def solve_discrete(instance, budget=None, seed=None):
    """
    Alpha mode: every image should have length at least alpha(g) while staying
    an approximate homomorphism.
    """
    if instance.mode != ALPHA:
        raise InvalidParameter('solve_discrete needs an alpha mode instance')
    source = instance.source
    for g, a in zip(instance.fragment, instance.alpha_values):
        if g == source.identity and a != 0:
            raise InvalidParameter('alpha should vanish at the identity, got %s' % a)
        if g != source.identity and not a > 0:
            raise InvalidParameter('alpha should be positive off the identity, got %s at %r'
                                   % (a, source.encode(g)))
        if a > instance.bound:
            raise InvalidParameter('alpha exceeds its bound %s' % instance.bound)
    return solve_local_search(instance, budget=budget, seed=seed)


def default_method(instance):
    if instance.target.family != 'symmetric' and isinstance(instance.source, CyclicGroup):
        return 'diagonal-cyclic'
    return 'discrete' if instance.mode == ALPHA else 'local'


def solve(instance):
    method = instance.method or default_method(instance)
    if method == 'exhaustive-cyclic':
        if instance.target.family != 'symmetric':
            raise InvalidParameter('Exhaustive cyclic search needs a symmetric target, '
                                   'use diagonal-cyclic for %s' % instance.target.family)
        return solve_exhaustive_cyclic(instance.source.order, instance.target.n,
                                       source=instance.source, delta=instance.delta)
    elif method == 'diagonal-cyclic':
        return solve_diagonal_cyclic(instance)
    elif method == 'discrete':
        return solve_discrete(instance)
    elif method == 'local':
        return solve_local_search(instance)
    raise InvalidParameter('Unknown method %r' % method)


### Instance files

INSTANCE_FIELDS = {'source', 'fragment', 'target', 'delta', 'mode', 'seed', 'budget',
                   'method', 'alpha', 'bound'}


def parse_budget(text):
    restarts, sep, steps = text.lower().partition('x')
    try:
        return int(restarts), int(steps)
    except ValueError:
        raise SpecSyntaxError('Budget should look like <restarts>x<steps>, got %r' % text)


def parse_instance(text):
    """
    Reads key=value lines, # starts a comment
    """
    from .specs import parse_group_spec

    fields = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep or key not in INSTANCE_FIELDS:
            raise SpecSyntaxError('Line %d: unknown field %r' % (lineno, key))
        fields[key] = value.strip()

    missing = {'source', 'target', 'delta'} - set(fields)
    if missing:
        raise SpecSyntaxError('Missing instance fields: %s' % ', '.join(sorted(missing)))

    source = parse_group_spec(fields['source'])
    fragment = None
    if fields.get('fragment', 'all') != 'all':
        try:
            fragment = lmap(source.decode, json.loads(fields['fragment']))
        except ValueError as e:
            raise SpecSyntaxError('Bad fragment: %s' % e)

    mode = fields.get('mode', METRIC)
    alpha = None
    if mode == ALPHA:
        level = _rational_field(fields, 'alpha', '1/2')
        identity = source.identity
        alpha = lambda g: Fraction(0) if g == identity else level

    try:
        seed = int(fields.get('seed', 0))
    except ValueError:
        raise SpecSyntaxError('Bad seed %r' % fields['seed'])

    return ApproxInstance(
        source, parse_target(fields['target']), _rational_field(fields, 'delta'),
        fragment=fragment, mode=mode, alpha=alpha,
        bound=_rational_field(fields, 'bound', '1'),
        seed=seed,
        budget=parse_budget(fields['budget']) if 'budget' in fields else DEFAULT_BUDGET,
        method=fields.get('method'),
    )


def _rational_field(fields, name, default=None):
    try:
        return rational(fields.get(name, default))
    except (TypeError, ValueError, ZeroDivisionError):
        raise SpecSyntaxError('Bad rational for %s: %r' % (name, fields.get(name)))


def load_instance(path):
    with open(path) as f:
        return parse_instance(f.read())
