# -*- coding: utf-8 -*-
from soficlab.conf import setting
from soficlab.groups import NUMERIC
from soficlab.reports import ReportCommand, Run, EXACT, numeric_provenance
from soficlab.specs import parse_group_spec
from soficlab.validation import validate_normed_group


class Command(ReportCommand):
    help = 'Checks the bi-invariant metric axioms of a group spec'
    subcommand = 'validate'

    def add_arguments(self, parser):
        parser.add_argument('--group', required=True)
        parser.add_argument('--seed', type=int, default=0,
                            help='Seed of sampled validation for large carriers')

    def run(self, group, seed, **options):
        group = parse_group_spec(group)
        report = validate_normed_group(group, seed=seed)
        result = report.as_dict()

        if group.scalar_mode == NUMERIC:
            provenance = numeric_provenance(setting('SOFICLAB_UNITARY_TOL'))
        else:
            provenance = EXACT
        table = result['violations'] or [{'axiom': None, 'count': 0}]
        failure = None if report.ok else 'Validation failed: %s' % report.summary()
        return Run(result, provenance, table=table, failure=failure)
