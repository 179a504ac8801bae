# -*- coding: utf-8 -*-
import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from numbers import Rational

import numpy as np
from funcy import lmap

from .conf import setting


def md5hex(s):
    return hashlib.md5(s.encode('utf-8')).hexdigest()


### Exact values

def rational(value):
    """
    Reads "a/b", decimal strings, ints, Fractions and floats (through their repr) exactly
    """
    if isinstance(value, bool):
        raise TypeError('Not a rational: %r' % value)
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError('Not a rational: %r' % (value,))

def format_rational(value):
    return str(Fraction(value))

def format_scalar(value):
    """
    Exact values become "a/b" strings, numeric ones stay floats
    """
    if isinstance(value, (Rational, Fraction)) and not isinstance(value, bool):
        return format_rational(value)
    return float(value)


def json_default(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, 'as_dict'):
        return obj.as_dict()
    raise TypeError('%r is not JSON serializable' % (obj,))

def dump_json(data, **kwargs):
    return json.dumps(data, sort_keys=True, default=json_default, **kwargs)


### Cache keys calculation

def func_cache_key(func, args, kwargs, context=None):
    """
    Hashes the qualified name of func, its arguments and a context dict.
    Arguments go through json_default, so Fractions and numpy scalars key by value.
    """
    factors = {
        'func': '%s.%s' % (func.__module__, func.__qualname__),
        'args': args,
        'kwargs': kwargs,
        'context': context or {},
    }
    return md5hex(dump_json(factors))


### Parallelism

def parallel_map(func, items):
    """
    Maps func over items in up to SOFICLAB_THREADS threads, results in input order
    """
    items = list(items)
    threads = setting('SOFICLAB_THREADS')
    if threads == 1 or len(items) < 2:
        return lmap(func, items)
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return list(executor.map(func, items))
