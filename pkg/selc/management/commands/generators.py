from django.conf import settings

from selc.conf_cohomology import Family, conf_generators
from selc.management.base import EngineCommand
from selc.rep_algebra import format_rep


class Command(EngineCommand):
    help = 'Generator module H0 of A^i or C^i.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_family_argument(parser)
        parser.add_argument('--degree', type=int, required=True)
        self.add_tier_argument(parser)
        self.add_jobs_argument(parser)

    def run(self, store, family, degree, tier, jobs, **options):
        fam = Family.parse(family)
        generators = conf_generators(fam, degree, tier, store, jobs or settings.EQLC_JOBS)
        for n, rep in generators.support:
            self.emit(
                {'family': fam.value, 'degree': degree, 'n': n, 'generators': format_rep(rep)},
                f'H0({fam.value}^{degree})_{n} = {format_rep(rep)}',
            )
        if not self.structured:
            self.stdout.write(f'provenance: {generators.provenance}')
