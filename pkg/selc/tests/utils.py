import tempfile

from django.test import SimpleTestCase, override_settings

from selc.partitions import enumerate_partitions
from selc.rep_algebra import RepDecomposition
from selc.store import CacheStore


class CacheTestCase(SimpleTestCase):
    """A SimpleTestCase whose engine cache lives in a fresh temporary directory."""

    def setUp(self):
        super().setUp()
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        settings_override = override_settings(EQLC_CACHE_DIR=tmp.name)
        settings_override.enable()
        self.addCleanup(settings_override.disable)
        self.cache_dir = tmp.name
        self.store = CacheStore(tmp.name)


def random_rep(rng, n, terms=3, max_mult=3):
    """A random non-zero S_n-representation with at most ``terms`` irreducible summands."""
    labels = enumerate_partitions(n)
    chosen = rng.sample(labels, rng.randint(1, min(terms, len(labels))))
    return RepDecomposition.from_mults(n, {lam: rng.randint(1, max_mult) for lam in chosen})
