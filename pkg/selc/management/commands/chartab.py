from django.conf import settings

from selc.characters import character_table, format_table
from selc.management.base import EngineCommand
from selc.partitions import format_partition


class Command(EngineCommand):
    help = 'Print (and cache) the character table of S_n.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--n', type=int, required=True)
        self.add_jobs_argument(parser)

    def run(self, store, n, jobs, **options):
        table = character_table(n, store, jobs or settings.EQLC_JOBS)
        if self.structured:
            for label, row in table:
                self.emit({'n': n, 'partition': format_partition(label), 'values': list(row.values)}, '')
        else:
            self.stdout.write(format_table(table), ending='')
