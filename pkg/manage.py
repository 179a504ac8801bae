#!/usr/bin/env python
"""
Runs soficlab commands from a checkout, against the test settings:

    ./manage.py certify --p 13 --family symmetric
    ./manage.py eval --group cyclic:p=13 --formula "sup x. d(x, e)"
"""
import os
import sys

if __name__ == '__main__':
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tests.settings')

    from soficlab.cli import run

    sys.exit(run(sys.argv[1:]))
