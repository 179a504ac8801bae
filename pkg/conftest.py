# Mirror run_tests.py: configure Django before the test modules are imported.
import os

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tests.settings')

import django  # noqa: E402
django.setup()
