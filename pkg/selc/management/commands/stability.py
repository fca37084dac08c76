from dataclasses import asdict

from selc.conf_cohomology import Family
from selc.management.base import EngineCommand
from selc.verifier import stability_report


class Command(EngineCommand):
    help = 'Detected stabilization degree of A^i or C^i against the sharp bound.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_family_argument(parser)
        parser.add_argument('--degree', type=int, required=True)
        parser.add_argument('--points', type=int, default=None)
        self.add_tier_argument(parser)

    def run(self, store, family, degree, points, tier, **options):
        report = stability_report(Family.parse(family), degree, points, tier, store)
        self.emit({**asdict(report), 'sharp': report.sharp}, report.describe())
