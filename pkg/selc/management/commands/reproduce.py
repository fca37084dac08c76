from django.core.management.base import CommandError

from selc.management.base import EngineCommand
from selc.reproduce import EXAMPLES, reproduce


class Command(EngineCommand):
    help = 'Regenerate a worked table and diff it against the golden copy.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--example', choices=sorted(EXAMPLES), required=True)

    def run(self, store, example, **options):
        result = reproduce(example, store)
        record = {
            'example': example,
            'passed': result.passed,
            'rows': result.rows,
            'mismatches': result.mismatches,
            'flags': result.notes,
        }
        self.emit(record, result.render())
        if not result.passed:
            raise CommandError(f'{example}: {len(result.mismatches)} mismatched cell(s)', returncode=1)
