# -*- coding: utf-8 -*-
import os

from django.conf import settings as base_settings
from django.core.exceptions import ImproperlyConfigured


FAMILIES = ('symmetric', 'gl-rank', 'hs')


class Settings(object):
    SOFICLAB_MATERIALIZE_MAX_DEGREE = 8
    SOFICLAB_TABLE_MAX_ELEMENTS = 10**4
    SOFICLAB_EXHAUSTIVE_MAX_ELEMENTS = 1000
    SOFICLAB_VALIDATION_SAMPLES = 2000
    SOFICLAB_UNITARY_TOL = 1e-9
    SOFICLAB_EXHAUSTIVE_MAX_DEGREE = 10**5
    SOFICLAB_SCALE_MAX = 10**4
    SOFICLAB_GRID_MAX_POINTS = 250000
    SOFICLAB_THREADS = int(os.environ.get('SOFICLAB_THREADS') or 1)
    SOFICLAB_CACHE_ENABLED = False
    SOFICLAB_CACHE_DIR = '/tmp/soficlab_cache'
    SOFICLAB_CACHE_TIMEOUT = 60*60*24*30

    def __getattribute__(self, name):
        # Work as a plain library when nobody configured django
        if base_settings.configured and hasattr(base_settings, name):
            return getattr(base_settings, name)
        return object.__getattribute__(self, name)

settings = Settings()


POSITIVE_SETTINGS = {
    'SOFICLAB_MATERIALIZE_MAX_DEGREE',
    'SOFICLAB_TABLE_MAX_ELEMENTS',
    'SOFICLAB_EXHAUSTIVE_MAX_ELEMENTS',
    'SOFICLAB_VALIDATION_SAMPLES',
    'SOFICLAB_EXHAUSTIVE_MAX_DEGREE',
    'SOFICLAB_SCALE_MAX',
    'SOFICLAB_GRID_MAX_POINTS',
    'SOFICLAB_THREADS',
}


def setting(name):
    """
    Returns a validated setting value
    """
    value = getattr(settings, name)
    if name in POSITIVE_SETTINGS and (not isinstance(value, int) or value < 1):
        raise ImproperlyConfigured('%s should be a positive integer, got %r' % (name, value))
    if name == 'SOFICLAB_UNITARY_TOL' and not value > 0:
        raise ImproperlyConfigured('SOFICLAB_UNITARY_TOL should be positive, got %r' % value)
    return value
