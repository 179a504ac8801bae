# -*- coding: utf-8 -*-
from soficlab.amplifier import (MatrixWitness, load_witness, shift_amplify,
                                linear_shift_amplify, unitary_shift_amplify, witness_summary)
from soficlab.exceptions import SoficlabError, InvalidArgument
from soficlab.conf import setting
from soficlab.reports import ReportCommand, Run, EXACT, numeric_provenance, rational_option
from soficlab.specs import parse_group_spec


class Command(ReportCommand):
    help = 'Combines a metric witness and a discrete one into a witness for the shifted metric'
    subcommand = 'amplify'

    def add_arguments(self, parser):
        parser.add_argument('--theta', required=True, help='Witness file for the metric')
        parser.add_argument('--theta-prime', default=None,
                            help='Witness file with pairwise distances 1 (or d_omega)')
        parser.add_argument('--eps', required=True)
        parser.add_argument('--tol', default=None,
                            help='Allowed deviation, 0 for exact witnesses by default')
        parser.add_argument('--companion', default=None,
                            help='Group spec of d_omega for rank metric witnesses')
        parser.add_argument('--copies', type=int, default=1,
                            help='Unitary witnesses: tensor theta with I_copies first')
        parser.add_argument('--dimension', type=int, default=None,
                            help='Unitary witnesses: dimension of the fitted theta\'')

    def run(self, theta, theta_prime, eps, tol, companion, copies, dimension, **options):
        theta = read_witness(theta)
        theta_prime = read_witness(theta_prime) if theta_prime else None
        eps, tol = rational_option('eps', eps), rational_option('tol', tol)
        if tol is not None and tol < 0:
            raise InvalidArgument('--tol should be non-negative, got %s' % tol)
        if theta_prime is not None and type(theta) is not type(theta_prime):
            raise InvalidArgument('Cannot amplify a %s witness with a %s one'
                                  % (theta.kind, theta_prime.kind))

        numeric = theta.family == 'unitary'
        if tol is None:
            tol = setting('SOFICLAB_UNITARY_TOL') if numeric else 0
        if numeric:
            if theta_prime is not None or companion:
                raise InvalidArgument('Unitary witnesses take neither --theta-prime '
                                      'nor --companion, theta\' is fitted')
            witness = unitary_shift_amplify(theta, eps, copies=copies, dimension=dimension,
                                            tol=tol)
        elif isinstance(theta, MatrixWitness):
            companion = parse_group_spec(companion) if companion else None
            witness = linear_shift_amplify(theta, theta_prime, eps, companion=companion,
                                           tol=tol)
        else:
            if companion:
                raise InvalidArgument('--companion applies to rank metric witnesses only')
            witness = shift_amplify(theta, theta_prime, eps, tol=tol)

        summary = witness_summary(witness)
        result = {'kind': witness.kind, 'summary': summary, 'witness': witness.as_dict()}
        failure = None
        if not witness.within_tol:
            failure = 'Output deviates from the shifted metric by %s, above tol %s' \
                      % (summary['deviation'], tol)
        if numeric:
            provenance = numeric_provenance(setting('SOFICLAB_UNITARY_TOL'))
        else:
            provenance = EXACT
        return Run(result, provenance, table=summary['pairs'], failure=failure)


def read_witness(path):
    try:
        witness = load_witness(path)
    except SoficlabError:
        raise
    except (OSError, ValueError) as e:
        raise InvalidArgument('Cannot read witness %s: %s' % (path, e))
    return witness
