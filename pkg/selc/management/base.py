import json

from django.core.management.base import BaseCommand, CommandError

from selc.conf_cohomology import TIERS, Family
from selc.exceptions import EngineError
from selc.store import CacheStore, default_store


class EngineCommand(BaseCommand):
    """Shared ``--cache-dir`` / ``--format`` handling for the engine commands.

    Subclasses implement ``run(store, **options)``; engine failures are
    reported as ``CommandError`` with exit status 1.
    """

    def add_arguments(self, parser):
        parser.add_argument('--cache-dir', default=None, help='Cache root (overrides EQLC_CACHE_DIR).')
        parser.add_argument('--format', choices=('text', 'structured'), default='text', dest='output_format')

    def add_family_argument(self, parser, required=True):
        parser.add_argument('--family', type=str.upper, choices=[f.value for f in Family], required=required)

    def add_tier_argument(self, parser):
        parser.add_argument('--tier', choices=TIERS, default='auto')

    def add_jobs_argument(self, parser):
        parser.add_argument('--jobs', type=int, default=None, help='Worker processes (defaults to EQLC_JOBS).')

    def handle(self, *args, **options):
        cache_dir = options.pop('cache_dir')
        store = CacheStore(cache_dir) if cache_dir else default_store()
        self.structured = options.pop('output_format') == 'structured'
        try:
            self.run(store, **options)
        except EngineError as exc:
            raise CommandError(str(exc), returncode=1) from exc

    def run(self, store, **options):
        raise NotImplementedError

    def emit(self, record: dict, text: str):
        if self.structured:
            self.stdout.write(json.dumps(record, ensure_ascii=False))
        else:
            self.stdout.write(text)
