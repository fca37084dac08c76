from django.core.management.base import CommandError

from selc.conf_cohomology import Family
from selc.management.base import EngineCommand
from selc.verifier import check_graded_selc


class Command(EngineCommand):
    help = 'FB-level check V^i_n⊗V^ℓ_n ⊆ V^j_n⊗V^k_n at a fixed number of points.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_family_argument(parser)
        parser.add_argument('--degree-sum', type=int, required=True)
        parser.add_argument('--points', type=int, required=True)
        self.add_tier_argument(parser)

    def run(self, store, family, degree_sum, points, tier, **options):
        fam = Family.parse(family)
        verdict = check_graded_selc(fam, degree_sum, points, tier, store)
        if not verdict.results:
            self.emit({'family': fam.value, 'm': degree_sum, 'n': points, 'verdict': 'vacuous'}, 'no quadruples: contained')
        for q, ok, witness in verdict.results:
            record = {
                'family': fam.value,
                'i': q.i, 'j': q.j, 'k': q.k, 'l': q.l, 'm': q.m, 'n': points,
                'verdict': 'contained' if ok else 'violated',
                'witness': None if witness is None else str(list(witness[1])),
            }
            self.emit(record, f"{fam.value} {q} at n={points}: {record['verdict']}")
        if not verdict.contained:
            raise CommandError('graded containment fails', returncode=1)
