# -*- coding: utf-8 -*-
"""
On-disk memoization of expensive numeric results, phase optimizations mainly.

Entries are pickles named by the md5 of the call. Each file's mtime is set to its expiry
time, so staleness is decided by a single stat. Keys fold in the package version and the
values of any settings the result depends on.
"""
import os
import pickle
import tempfile
import threading
import time
from contextlib import ContextDecorator

from funcy import wraps

from .conf import settings
from .utils import func_cache_key, md5hex


__all__ = ('cached', 'no_cache', 'file_cache', 'CacheMiss', 'FileCache')


class CacheMiss(Exception):
    pass


class FileCache(object):
    def __init__(self, path=None, timeout=None):
        self._dir = path
        self._timeout = timeout

    @property
    def dir(self):
        return self._dir or settings.SOFICLAB_CACHE_DIR

    @property
    def timeout(self):
        return self._timeout or settings.SOFICLAB_CACHE_TIMEOUT

    def path(self, key):
        digest = md5hex(key)
        return os.path.join(self.dir, digest[:2], digest[2:])

    def cached(self, timeout=None, depends_on=(), key_func=func_cache_key):
        """
        Memoizes func while SOFICLAB_CACHE_ENABLED is on and no_cache is not active.
        depends_on names settings whose current values become part of the key.
        """
        if callable(timeout):
            return self.cached(depends_on=depends_on, key_func=key_func)(timeout)

        def decorator(func):
            def make_key(args, kwargs):
                from . import __version__
                context = {'version': __version__}
                context.update((name, getattr(settings, name)) for name in depends_on)
                return key_func(func, args, kwargs, context)

            @wraps(func)
            def wrapper(*args, **kwargs):
                if not settings.SOFICLAB_CACHE_ENABLED or no_cache.active:
                    return func(*args, **kwargs)
                key = make_key(args, kwargs)
                try:
                    return self.get(key)
                except CacheMiss:
                    result = func(*args, **kwargs)
                    self.set(key, result, timeout)
                    return result

            wrapper.invalidate = lambda *args, **kwargs: self.delete(make_key(args, kwargs))
            return wrapper
        return decorator

    def get(self, key):
        filename = self.path(key)
        try:
            if os.stat(filename).st_mtime <= time.time():
                self._remove(filename)
                raise CacheMiss
            with open(filename, 'rb') as f:
                return pickle.load(f)
        except (OSError, EOFError, pickle.UnpicklingError):
            raise CacheMiss

    def set(self, key, data, timeout=None):
        filename = self.path(key)
        expires = time.time() + (self.timeout if timeout is None else timeout)
        try:
            os.makedirs(os.path.dirname(filename), exist_ok=True)
            # Write aside and rename, readers never see a partial pickle
            fd, scratch = tempfile.mkstemp(dir=os.path.dirname(filename))
            with os.fdopen(fd, 'wb') as f:
                pickle.dump(data, f, pickle.HIGHEST_PROTOCOL)
            os.utime(scratch, (expires, expires))
            os.replace(scratch, filename)
        except OSError:
            pass

    def delete(self, key):
        self._remove(self.path(key))

    def _remove(self, filename):
        try:
            os.remove(filename)
            os.rmdir(os.path.dirname(filename))
        except OSError:
            pass

    def clean(self, everything=False):
        """
        Removes expired entries, or all of them, and returns how many files went
        """
        now, removed = time.time(), 0
        for dirpath, _, filenames in os.walk(self.dir):
            for name in filenames:
                filename = os.path.join(dirpath, name)
                try:
                    if everything or os.stat(filename).st_mtime <= now:
                        self._remove(filename)
                        removed += 1
                except OSError:
                    pass
        return removed


file_cache = FileCache()
cached = file_cache.cached


class _Bypass(threading.local):
    depth = 0


class NoCache(ContextDecorator):
    """
    Bypasses the result cache in the current thread
    """
    def __init__(self):
        self._bypass = _Bypass()

    def __enter__(self):
        self._bypass.depth += 1

    def __exit__(self, *exc):
        self._bypass.depth -= 1

    @property
    def active(self):
        return self._bypass.depth > 0


no_cache = NoCache()
