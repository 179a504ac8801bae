#!/usr/bin/env python
"""
Times the workloads in tests/bench.py.

    ./bench.py [-1] [-p] [-v] [selector]

-1 runs each workload once, -p profiles it with profilehooks, -v prints a header per workload.
A selector is a regex over workload names, or =name for an exact match.
Workloads with a 'budget' (seconds) are flagged when their best time exceeds it.
"""
import gc
import os
import sys
import time
import warnings

from funcy import re_tester

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tests.settings')


def timed(run, prepared):
    gc.disable()
    try:
        start = time.perf_counter()
        if prepared is None:
            run()
        else:
            run(prepared)
        return time.perf_counter() - start
    finally:
        gc.enable()


def bench(test, flags):
    run = test['run']
    if 'p' in flags:
        from profilehooks import profile
        run = profile(run)

    prepared = test['prepare_once']() if 'prepare_once' in test else None
    durations = []
    # Repeat until a second is spent, at least once
    while not durations or ('1' not in flags and sum(durations) < 1):
        if 'prepare' in test:
            prepared = test['prepare']()
        durations.append(timed(run, prepared))
    return min(durations), len(durations)


def main(argv):
    flags = ''.join(arg[1:] for arg in argv if arg.startswith('-'))
    args = [arg for arg in argv if not arg.startswith('-')]
    selector = args[0] if args else ''
    select = selector[1:].__eq__ if selector.startswith('=') else re_tester(selector)

    import django
    django.setup()
    from tests.bench import TESTS

    over = []
    for name, test in TESTS:
        if not select(name):
            continue
        if 'v' in flags:
            print('=' * 20, name, '=' * 20)
        best, runs = bench(test, flags)
        budget = test.get('budget')
        mark = ''
        if budget is not None and best > budget:
            mark = '  OVER %gs budget' % budget
            over.append(name)
        print('%-20s %10.2fms  x%-4d%s' % (name, best * 1000, runs, mark))
    return 1 if over else 0


if __name__ == '__main__':
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', RuntimeWarning)
        try:
            sys.exit(main(sys.argv[1:]))
        except KeyboardInterrupt:
            pass
