from django.conf import settings
from django.core.management.base import CommandError

from selc.conf_cohomology import (
    Family,
    cohomological_degree,
    conf_decomposition,
    family_for_dimension,
    poincare_dimension,
)
from selc.management.base import EngineCommand
from selc.rep_algebra import format_rep


class Command(EngineCommand):
    help = 'Decompose A^i_n or C^i_n into irreducibles.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_family_argument(parser, required=False)
        parser.add_argument('--dimension', type=int, help='Ambient dimension d of Conf(n, R^d), instead of --family.')
        parser.add_argument('--degree', type=int, required=True)
        parser.add_argument('--points', type=int, required=True)
        self.add_tier_argument(parser)
        self.add_jobs_argument(parser)

    def run(self, store, family, dimension, degree, points, tier, jobs, **options):
        if (family is None) == (dimension is None):
            raise CommandError('pass exactly one of --family and --dimension')
        fam = family_for_dimension(dimension) if dimension is not None else Family.parse(family)
        rep = conf_decomposition(fam, degree, points, tier, store, jobs or settings.EQLC_JOBS)
        expected = poincare_dimension(points, degree)
        if rep.dimension() != expected:
            raise CommandError(f'dimension {rep.dimension()} differs from c({points},{points - degree}) = {expected}')
        record = {
            'family': fam.value,
            'degree': degree,
            'points': points,
            'decomposition': format_rep(rep),
            'dimension': rep.dimension(),
        }
        label = f'{fam.value}^{degree}_{points}'
        if dimension is not None:
            record['cohomological_degree'] = cohomological_degree(dimension, degree)
            label = f"H^{record['cohomological_degree']}(Conf({points}, R^{dimension}))"
        self.emit(record, f'{label} = {format_rep(rep)}  (dim {rep.dimension()})')
