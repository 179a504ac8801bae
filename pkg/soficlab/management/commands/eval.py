# -*- coding: utf-8 -*-
import json

from soficlab.conf import setting
from soficlab.exceptions import InvalidArgument
from soficlab.groups import NUMERIC
from soficlab.logic import parse, print_formula, evaluate, free_variables, is_sup_sentence, \
                           check_condition
from soficlab.reports import ReportCommand, Run, EXACT, numeric_provenance, rational_option
from soficlab.specs import parse_group_spec
from soficlab.utils import format_scalar


class Command(ReportCommand):
    help = 'Evaluates a continuous logic formula in a finite metric group'
    subcommand = 'eval'

    def add_arguments(self, parser):
        parser.add_argument('--group', required=True,
                            help='Group spec, e.g. cyclic:p=13:metric=lee')
        parser.add_argument('--formula', required=True)
        parser.add_argument('--assign', action='append', default=[], metavar='x=<json>',
                            help='Assign an element to a free variable, repeatable')
        parser.add_argument('--condition', action='store_true',
                            help='Check the condition formula = 0, exit 1 when it fails')
        parser.add_argument('--tol', default=None)

    def run(self, group, formula, assign, condition, tol, **options):
        group = parse_group_spec(group)
        formula = parse(formula)
        assignment = dict(parse_assignment(group, text) for text in assign)
        tol = rational_option('tol', tol)
        if tol is None:
            tol = setting('SOFICLAB_UNITARY_TOL') if group.scalar_mode == NUMERIC else 0

        value = evaluate(formula, group, assignment)
        sentence = not free_variables(formula)
        result = {
            'group': group.spec,
            'formula': print_formula(formula),
            'assignment': {name: group.encode(g) for name, g in assignment.items()},
            'value': format_scalar(value),
            'sentence': sentence,
            'sup_sentence': sentence and is_sup_sentence(formula),
        }

        failure = None
        if condition:
            if not sentence:
                raise InvalidArgument('Conditions are checked on sentences only')
            result['holds'] = check_condition(formula, group, tol)
            if not result['holds']:
                failure = 'Condition %s = 0 fails in %s' % (result['formula'], group.spec)

        if group.scalar_mode == NUMERIC:
            provenance = numeric_provenance(tol)
        else:
            provenance = EXACT
        return Run(result, provenance, table=[result], failure=failure)


def parse_assignment(group, text):
    name, sep, value = text.partition('=')
    if not sep or not name.strip():
        raise InvalidArgument('Expected --assign x=<json>, got %r' % text)
    try:
        value = json.loads(value)
    except ValueError:
        raise InvalidArgument('Bad JSON in --assign %s' % text)
    return name.strip(), group.decode(value)
