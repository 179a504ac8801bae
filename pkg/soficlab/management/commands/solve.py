# -*- coding: utf-8 -*-
from soficlab.exceptions import InvalidArgument
from soficlab.reports import ReportCommand, Run, EXACT, numeric_provenance
from soficlab.solver import load_instance, parse_budget, solve
from soficlab.conf import setting


class Command(ReportCommand):
    help = 'Searches for a witness map of an approximation instance'
    subcommand = 'solve'

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='Instance file, key=value lines')
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--budget', default=None, help='<restarts>x<steps>, e.g. 16x400')
        parser.add_argument('--method', default=None, choices=(
            'local', 'exhaustive-cyclic', 'diagonal-cyclic', 'discrete'))

    def run(self, instance, seed, budget, method, **options):
        try:
            problem = load_instance(instance)
        except OSError as e:
            raise InvalidArgument('Cannot read instance %s: %s' % (instance, e))
        if seed is not None:
            problem.seed = seed
        if budget is not None:
            problem.budget = parse_budget(budget)
        if method is not None:
            problem.method = method

        witness = solve(problem)
        result = {'instance': problem.config(), 'witness': witness.as_dict()}
        if problem.target.family == 'unitary':
            provenance = numeric_provenance(setting('SOFICLAB_UNITARY_TOL'))
        else:
            provenance = EXACT

        if 'table' in witness.extra:
            table = witness.extra['table']
        else:
            table = [{'element': g, 'image': image} for g, image in witness.as_dict()['gamma']]
        return Run(result, provenance, table=table)
