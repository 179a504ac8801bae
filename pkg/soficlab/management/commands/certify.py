# -*- coding: utf-8 -*-
from soficlab.conf import FAMILIES
from soficlab.obstruction import ALL_FAMILIES, certify_not_sofic
from soficlab.phases import BISECTION_TOL
from soficlab.reports import ReportCommand, Run, EXACT, numeric_provenance, rational_option


class Command(ReportCommand):
    help = 'Certifies lower bounds on approximating (Z(p), d_Lee) by each target family'
    subcommand = 'certify'

    def add_arguments(self, parser):
        parser.add_argument('--p', type=int, required=True)
        parser.add_argument('--family', default='all', choices=FAMILIES + ('all',))
        parser.add_argument('--n-max', type=int, default=200)
        parser.add_argument('--delta-max', default=None,
                            help='Also report the transfer bound at this delta')
        parser.add_argument('--resolution', type=int, default=100,
                            help='Coarse grid resolution for the HS floor')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--verify', action='store_true',
                            help='Re-run the enumerations and compare')

    def run(self, p, family, n_max, delta_max, resolution, seed, verify, **options):
        families = ALL_FAMILIES if family == 'all' else (family,)
        certificate = certify_not_sofic(p, n_max=n_max,
                                        delta_max=rational_option('delta-max', delta_max),
                                        resolution=resolution, seed=seed, families=families)
        result = certificate.as_dict()
        failure = None
        if verify:
            result['verified'] = certificate.verify()
            if not result['verified']:
                failure = 'Certificate for p=%d does not reproduce' % p

        provenance = {name: numeric_provenance(BISECTION_TOL) if name == 'hs' else EXACT
                      for name in certificate.floors}
        table = [dict(f.as_dict(), proof_data=None, p=p) for f in certificate.floors.values()]
        return Run(result, provenance, table=table, failure=failure)
