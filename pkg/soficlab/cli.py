# -*- coding: utf-8 -*-
"""
The `soficlab` console script. Runs the management commands of the app without a project:

    soficlab certify --p 13 --family all --out cert.json
    soficlab eval --group cyclic:p=13:metric=lee --formula "sup x. sup y. d(x*y, y*x)"

Exit codes: 0 on success, 1 on a validation failure, 2 on a usage error.
"""
import os
import sys
from contextlib import redirect_stdout

import django
from django.apps import apps
from django.conf import settings, ENVIRONMENT_VARIABLE
from django.core.exceptions import ImproperlyConfigured
from django.core.management import load_command_class
from django.core.management.base import CommandError


COMMANDS = ('certify', 'solve', 'amplify', 'eval', 'validate', 'cleancache')
USAGE_ERROR = 2


def setup():
    if not settings.configured and not os.environ.get(ENVIRONMENT_VARIABLE):
        settings.configure(INSTALLED_APPS=['soficlab'])
    if not apps.ready:
        django.setup()


def usage():
    return 'Usage: soficlab <command> [options]\n\nCommands:\n%s\n' \
        % '\n'.join('    %s' % name for name in COMMANDS)


def run(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    setup()

    if not argv or argv[0] in ('-h', '--help', 'help'):
        stdout.write(usage())
        return 0 if argv else USAGE_ERROR
    name, args = argv[0], argv[1:]
    if name not in COMMANDS:
        stderr.write('Unknown command: %r\n\n%s' % (name, usage()))
        return USAGE_ERROR

    command = load_command_class('soficlab', name)
    parser = command.create_parser('soficlab', name)
    try:
        with redirect_stdout(stdout):
            options = parser.parse_args(args)
    except CommandError as e:
        stderr.write('%s\n\n%s' % (e, parser.format_help()))
        return USAGE_ERROR
    except SystemExit as e:
        # --help
        return e.code or 0

    options = vars(options)
    args = options.pop('args', ())
    options.update(stdout=stdout, stderr=stderr)
    try:
        command.execute(*args, **options)
    except CommandError as e:
        stderr.write('Error: %s\n' % e)
        return e.returncode
    except ImproperlyConfigured as e:
        stderr.write('Improperly configured: %s\n' % e)
        return USAGE_ERROR
    return 0


def main():
    sys.exit(run(sys.argv[1:]))
