"""Ordinary characters of the symmetric groups.

Values come from the Murnaghan-Nakayama rule, evaluated on beta-sets with the
largest cycle stripped first and memoized on (remaining shape, remaining
cycles). Full tables are cached per ``n`` on disk, in the canonical
(reverse lexicographic) order of ``partitions.enumerate_partitions``.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exceptions import CacheCorruptionError, EngineError, WeightMismatchError
from .partitions import (
    Partition,
    class_size,
    enumerate_partitions,
    format_partition,
    parse_partition,
    partition_index,
    weight,
    z_lambda,
)
from .store import resolve_store

logger = logging.getLogger(__name__)

TABLE_HEADER = 'chartab v1 n={n}'

# Orthogonality is re-checked on freshly computed tables up to this size.
SELF_CHECK_MAX_N = 16


@dataclass(frozen=True)
class CharacterVector:
    """A class function on S_n, stored in canonical cycle-type order."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(enumerate_partitions(self.n)):
            raise ValueError(f'a class function on S_{self.n} needs {len(enumerate_partitions(self.n))} values')

    @classmethod
    def from_mapping(cls, n, mapping):
        return cls(n, tuple(mapping.get(mu, 0) for mu in enumerate_partitions(n)))

    @classmethod
    def zero(cls, n):
        return cls(n, (0,) * len(enumerate_partitions(n)))

    def __getitem__(self, cycle_type: Partition):
        return self.values[partition_index(self.n)[cycle_type]]

    def items(self):
        return zip(enumerate_partitions(self.n), self.values)

    def as_dict(self):
        return dict(self.items())

    @property
    def degree(self):
        """Value at the identity class (1,...,1)."""
        return self.values[-1]

    def _check(self, other):
        if self.n != other.n:
            raise WeightMismatchError(self.n, other.n)

    def __add__(self, other):
        self._check(other)
        return CharacterVector(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return CharacterVector(self.n, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, CharacterVector):
            self._check(other)
            return CharacterVector(self.n, tuple(a * b for a, b in zip(self.values, other.values)))
        return CharacterVector(self.n, tuple(a * other for a in self.values))

    __rmul__ = __mul__


@dataclass(frozen=True)
class CharacterTable:
    n: int
    rows: dict
    provenance: str = 'computed'

    @property
    def classes(self):
        return enumerate_partitions(self.n)

    def row(self, label: Partition) -> CharacterVector:
        return self.rows[label]

    def __iter__(self):
        return iter(self.rows.items())

    def __len__(self):
        return len(self.rows)


def _beta_set(shape):
    length = len(shape)
    return tuple(part + length - 1 - i for i, part in enumerate(shape))


def _from_beta(beta):
    length = len(beta)
    return tuple(p for p in (b - (length - 1 - i) for i, b in enumerate(beta)) if p > 0)


@lru_cache(maxsize=None)
def _mn(shape: Partition, cycles: Partition) -> int:
    if not cycles:
        return 1 if not shape else 0
    strip = cycles[0]
    rest = cycles[1:]
    beta = _beta_set(shape)
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - strip
        if target < 0 or target in occupied:
            continue
        height = sum(1 for x in beta if target < x < b)
        new_beta = tuple(sorted((occupied - {b}) | {target}, reverse=True))
        value = _mn(_from_beta(new_beta), rest)
        total += -value if height % 2 else value
    return total


def mn_character(label: Partition, cycle_type: Partition) -> int:
    """χ_λ(μ) by the Murnaghan-Nakayama rule."""
    if weight(label) != weight(cycle_type):
        raise WeightMismatchError(weight(label), weight(cycle_type))
    return _mn(tuple(label), tuple(sorted(cycle_type, reverse=True)))


def _character_row(label):
    return tuple(_mn(label, mu) for mu in enumerate_partitions(weight(label)))


def compute_table(n: int, jobs: int = 1) -> CharacterTable:
    labels = enumerate_partitions(n)
    if jobs > 1 and len(labels) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_character_row, labels, chunksize=max(1, len(labels) // (4 * jobs))))
    else:
        values = [_character_row(lam) for lam in labels]
    table = CharacterTable(n, {lam: CharacterVector(n, row) for lam, row in zip(labels, values)})
    if n <= SELF_CHECK_MAX_N:
        check_orthogonality(table)
    return table


def check_orthogonality(table: CharacterTable) -> None:
    """Raise unless both orthogonality relations hold exactly."""
    n = table.n
    classes = enumerate_partitions(n)
    sizes = [class_size(mu) for mu in classes]
    order = factorial(n)
    labels = list(table.rows)
    for a in labels:
        for b in labels:
            total = sum(s * x * y for s, x, y in zip(sizes, table.rows[a].values, table.rows[b].values))
            if total != (order if a == b else 0):
                raise EngineError(
                    f'row orthogonality fails for S_{n} at {format_partition(a)}, {format_partition(b)}'
                )
    for i, mu in enumerate(classes):
        for j, nu in enumerate(classes):
            total = sum(table.rows[lam].values[i] * table.rows[lam].values[j] for lam in labels)
            if total != (z_lambda(mu) if i == j else 0):
                raise EngineError(
                    f'column orthogonality fails for S_{n} at {format_partition(mu)}, {format_partition(nu)}'
                )


def format_table(table: CharacterTable) -> str:
    lines = [TABLE_HEADER.format(n=table.n)]
    for lam in enumerate_partitions(table.n):
        values = ' '.join(str(v) for v in table.rows[lam].values)
        lines.append(f'{format_partition(lam)} : {values}'.rstrip())
    return '\n'.join(lines) + '\n'


def parse_table(text: str, n: int, path='<memory>') -> CharacterTable:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].strip() != TABLE_HEADER.format(n=n):
        raise CacheCorruptionError(path, f'expected header {TABLE_HEADER.format(n=n)!r}')
    labels = enumerate_partitions(n)
    if len(lines) - 1 != len(labels):
        raise CacheCorruptionError(path, f'expected {len(labels)} rows, found {len(lines) - 1}')
    rows = {}
    for expected, line in zip(labels, lines[1:]):
        head, sep, tail = line.partition(':')
        if not sep:
            raise CacheCorruptionError(path, f"missing ':' in {line!r}")
        try:
            label = parse_partition(head)
            values = tuple(int(v) for v in tail.split())
        except ValueError as exc:
            raise CacheCorruptionError(path, f'unreadable row {line!r}') from exc
        if label != expected:
            raise CacheCorruptionError(path, f'row {format_partition(label)} out of canonical order')
        if len(values) != len(labels):
            raise CacheCorruptionError(path, f'row {format_partition(label)} has {len(values)} columns')
        rows[label] = CharacterVector(n, values)
    return CharacterTable(n, rows, provenance='loaded')


_TABLES: dict[int, CharacterTable] = {}


def clear_memory_cache():
    _TABLES.clear()


def character_table(n: int, store=None, jobs: int = 1) -> CharacterTable:
    """The full character table of S_n, from memory, the cache, or computed."""
    if n < 0:
        raise ValueError(f'no symmetric group of negative degree ({n})')
    if n in _TABLES:
        return _TABLES[n]
    store = resolve_store(store)
    key = ('chartab', f'n{n}.txt')
    text = store.read(*key)
    if text is not None:
        table = parse_table(text, n, store.path(*key))
        logger.debug('loaded character table of S_%d from %s', n, store.path(*key))
    else:
        table = compute_table(n, jobs=jobs)
        store.write(format_table(table), *key)
        logger.info('computed character table of S_%d (%d classes)', n, len(table))
    _TABLES[n] = table
    return table


def irreducible_character(label: Partition, store=None) -> CharacterVector:
    return character_table(weight(label), store).row(label)


def inner_product(a: CharacterVector, b: CharacterVector) -> Fraction:
    """⟨a, b⟩ = (1/n!) Σ_μ |C_μ| a(μ) b(μ)."""
    if a.n != b.n:
        raise WeightMismatchError(a.n, b.n)
    total = sum(
        class_size(mu) * x * y for mu, x, y in zip(enumerate_partitions(a.n), a.values, b.values)
    )
    return Fraction(total, factorial(a.n))


def regular_character(n: int) -> CharacterVector:
    identity = (1,) * n
    return CharacterVector.from_mapping(n, {identity: factorial(n)})


def permutation_character(n: int) -> CharacterVector:
    """Character of S_n permuting [n]: number of fixed points."""
    return CharacterVector.from_mapping(n, {mu: mu.count(1) for mu in enumerate_partitions(n)})
