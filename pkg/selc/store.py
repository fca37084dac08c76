"""Persistent cache of computed tables and modules.

Entries are plain text files under the cache root. Readers may run
concurrently; every write goes to a temporary file in the target directory
and is published with ``os.replace`` so a reader never sees a partial file.
"""

import logging
import os
import tempfile
from pathlib import Path

from django.conf import settings

from .exceptions import CacheCorruptionError

logger = logging.getLogger(__name__)


class CacheStore:
    def __init__(self, root=None):
        self.root = Path(root if root is not None else settings.EQLC_CACHE_DIR)

    def __repr__(self):
        return f'CacheStore({str(self.root)!r})'

    def path(self, *parts) -> Path:
        return self.root.joinpath(*parts)

    def exists(self, *parts) -> bool:
        return self.path(*parts).is_file()

    def read(self, *parts):
        """Return the entry's text, or None when it is absent."""
        path = self.path(*parts)
        try:
            return path.read_text(encoding='utf-8')
        except FileNotFoundError:
            return None
        except (OSError, UnicodeDecodeError) as exc:
            raise CacheCorruptionError(path, str(exc)) from exc

    def write(self, text: str, *parts) -> Path:
        path = self.path(*parts)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f'.{path.name}.', suffix='.tmp')
        try:
            with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as handle:
                handle.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.debug('published %s', path)
        return path

    def remove(self, *parts) -> bool:
        path = self.path(*parts)
        if path.is_file():
            path.unlink()
            logger.warning('removed cache entry %s', path)
            return True
        return False


def default_store() -> CacheStore:
    return CacheStore(settings.EQLC_CACHE_DIR)


def resolve_store(store=None) -> CacheStore:
    if store is None:
        return default_store()
    if isinstance(store, CacheStore):
        return store
    return CacheStore(store)
