from django.core.management.base import CommandError

from selc.conf_cohomology import Family
from selc.management.base import EngineCommand
from selc.verifier import verify_degree, verify_up_to


class Command(EngineCommand):
    help = 'Check A^i⊗A^ℓ ↪ A^j⊗A^k (or C) as FI♯-modules for every quadruple.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_family_argument(parser)
        target = parser.add_mutually_exclusive_group(required=True)
        target.add_argument('--degree-sum', type=int)
        target.add_argument('--max-sum', type=int)
        parser.add_argument('--long-run', action='store_true', help='Allow sums beyond desk scale, with checkpoints.')
        self.add_jobs_argument(parser)
        parser.add_argument('--swap', action='store_true', help='Exchange big and small sides (diagnostic).')
        self.add_tier_argument(parser)

    def run(self, store, family, degree_sum, max_sum, long_run, jobs, swap, tier, **options):
        fam = Family.parse(family)
        if degree_sum is not None:
            report = verify_degree(fam, degree_sum, tier, store, jobs, swap, long_run)
        else:
            report = verify_up_to(fam, max_sum, tier, store, jobs, swap, long_run)
        self.stdout.write(report.structured() if self.structured else report.text())
        if not report.all_contained:
            failed = sum(1 for v in report.verdicts if not v.contained)
            raise CommandError(f'{failed} of {len(report.verdicts)} quadruple(s) not contained', returncode=1)
