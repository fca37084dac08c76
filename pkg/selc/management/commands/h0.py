from django.conf import settings
from django.core.management.base import CommandError

from selc.conf_cohomology import Family, conf_module_from_generators
from selc.fb_modules import tensor
from selc.fi_sharp import h_zero_trace
from selc.management.base import EngineCommand
from selc.rep_algebra import format_rep
from selc.reproduce import discrepancy_note


def _pair(value):
    try:
        i, j = (int(part) for part in value.split(','))
    except ValueError:
        raise CommandError(f'--pair expects i,j, got {value!r}') from None
    return i, j


class Command(EngineCommand):
    help = 'H0 of A^i ⊗ A^j (or C), degree by degree, with the induced rows it subtracts.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_family_argument(parser)
        parser.add_argument('--pair', required=True, help='i,j')
        self.add_tier_argument(parser)

    def run(self, store, family, pair, tier, **options):
        fam = Family.parse(family)
        i, j = _pair(pair)
        bound = 2 * (i + j)
        top = bound + settings.EQLC_CONSISTENCY_SLACK
        left = conf_module_from_generators(fam, i, top, tier, store)
        right = left if i == j else conf_module_from_generators(fam, j, top, tier, store)
        product = tensor(left, right, top, store)
        trace = h_zero_trace(product, bound)
        note = discrepancy_note(fam, i, j)
        flags = [note] if note else []
        for n in range(bound + 1):
            record = {
                'family': fam.value,
                'pair': [i, j],
                'n': n,
                'tensor': format_rep(product.degree(n)),
                'induced': format_rep(trace.induced[n]),
                'h0': format_rep(trace.generators.degree(n)),
                'flags': flags,
            }
            self.emit(
                record,
                f"n={n}\n  tensor : {record['tensor']}\n  induced: {record['induced']}\n  H0     : {record['h0']}",
            )
        if not self.structured:
            self.stdout.write(f'consistency window {list(trace.window)}: ok')
            for flag in flags:
                self.stdout.write(f'note: {flag}')
