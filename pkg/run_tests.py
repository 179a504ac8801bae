#!/usr/bin/env python
"""
    ./run_tests.py                          # everything
    ./run_tests.py tests_solver             # one module
    ./run_tests.py tests_solver.LocalSearchTests
    ./run_tests.py CacheTests               # a class of tests/tests.py
    ./run_tests.py --threads=4 -x -v        # worker threads, failfast, verbose
"""
import os, sys, re
os.environ['DJANGO_SETTINGS_MODULE'] = 'tests.settings'

threads = next((a.split('=', 1)[1] for a in sys.argv[1:] if a.startswith('--threads=')), None)
if threads:
    os.environ['SOFICLAB_THREADS'] = threads


# Set up Django
import django
from django.core.management import call_command
django.setup()


# Derive test names
names = next((a for a in sys.argv[1:] if not a.startswith('-')), None)
if not names:
    names = 'tests'
elif re.search(r'^tests_\w+(\.\w+)*$', names):
    names = 'tests.' + names
elif not names.startswith('tests.'):
    names = 'tests.tests.' + names


call_command('test', names, failfast='-x' in sys.argv, verbosity=2 if '-v' in sys.argv else 1)
