# -*- coding: utf-8 -*-
import csv
import io

from django.core.management.base import BaseCommand, CommandError

from .exceptions import SoficlabError, ValidationFailure, InvalidParameter
from .signals import witness_found, search_finished, certificate_issued, validation_failed
from .utils import dump_json, format_scalar, rational


__all__ = ('ReportCommand', 'Run', 'build_report', 'render_report', 'EXACT', 'numeric_provenance',
           'rational_option')


EXACT = 'exact'

# Options of django BaseCommand which do not describe an experiment
DJANGO_OPTIONS = {'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color',
                  'force_color', 'skip_checks', 'stdout', 'stderr', 'out', 'format'}


def numeric_provenance(tol):
    return 'numeric+tolerance(%g)' % tol


def rational_option(name, value):
    if value is None:
        return None
    try:
        return rational(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidParameter('--%s should be a rational like 1/2, got %r' % (name, value))


def build_report(subcommand, config, result, provenance):
    from . import __version__

    return {
        'tool': 'soficlab',
        'version': __version__,
        'config': dict(config, subcommand=subcommand),
        'result': result,
        'provenance': provenance,
    }


def render_report(report, fmt='json', table=None):
    if fmt == 'json':
        return dump_json(report, indent=2)
    buffer = io.StringIO()
    rows = table or []
    columns = sorted({key for row in rows for key in row})
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_value(value) for key, value in row.items()})
    return buffer.getvalue().rstrip('\n')


def _csv_value(value):
    if isinstance(value, (list, dict)):
        return dump_json(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    return format_scalar(value)


class ReportCommand(BaseCommand):
    """
    A command running one experiment and writing its report.

    Subclasses implement run(**options) returning a Run, raise SoficlabError for bad input.
    """
    requires_system_checks = []
    subcommand = None

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super(ReportCommand, self).create_parser(prog_name, subcommand, **kwargs)
        parser.add_argument('--out', default='-', help='Report path, - for stdout')
        parser.add_argument('--format', default='json', choices=('json', 'csv'))
        return parser

    def handle(self, **options):
        if options['verbosity'] >= 2:
            self.connect_printers()
        try:
            run = self.run(**options)
        except ValidationFailure as e:
            raise CommandError(str(e), returncode=1)
        except SoficlabError as e:
            raise CommandError(str(e), returncode=2)
        finally:
            if options['verbosity'] >= 2:
                self.disconnect_printers()

        config = {key: _config_value(value) for key, value in options.items()
                  if key not in DJANGO_OPTIONS}
        report = build_report(self.subcommand, config, run.result, run.provenance)
        text = render_report(report, options['format'], run.table)
        if options['out'] == '-':
            self.stdout.write(text)
        else:
            with open(options['out'], 'w') as f:
                f.write(text + '\n')

        if run.failure:
            raise CommandError(run.failure, returncode=1)

    def run(self, **options):
        raise NotImplementedError

    ### Observability

    def connect_printers(self):
        self._printers = {
            witness_found: lambda sender, method, witness, **kw: self.stderr.write(
                'witness found by %s, defect %s' % (method, format_scalar(witness.defect.value))),
            search_finished: lambda sender, method, best_defect, restarts, **kw:
                self.stderr.write('%s search finished after %d restart(s), best %s'
                                  % (method, restarts, format_scalar(best_defect.value))),
            certificate_issued: lambda sender, certificate, **kw: self.stderr.write(
                'certificate issued for p=%d' % certificate.p),
            validation_failed: lambda sender, group, report, **kw: self.stderr.write(
                'validation failed for %s: %s' % (group.spec, report.summary())),
        }
        for signal, printer in self._printers.items():
            signal.connect(printer, weak=False)

    def disconnect_printers(self):
        for signal, printer in self._printers.items():
            signal.disconnect(printer)


class Run(object):
    def __init__(self, result, provenance, table=None, failure=None):
        self.result = result
        self.provenance = provenance
        self.table = table
        self.failure = failure


def _config_value(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return list(value)
    return str(value)
