"""Integer partitions: enumeration, conjugation, class sizes and hook dimensions.

A partition is a plain tuple of weakly decreasing positive integers; ``()``
is the unique partition of 0. Tuples are hashable and immutable, so they
serve directly as dictionary keys for decompositions and character tables.
"""

from collections import Counter
from functools import cache
from math import factorial, prod

from sympy.functions.combinatorial.numbers import stirling
from sympy.utilities.iterables import partitions as sympy_partitions

from .exceptions import InvalidPartitionError

Partition = tuple[int, ...]


def check_partition(parts) -> Partition:
    """Validate ``parts`` and return it as a canonical tuple."""
    parts = tuple(int(p) for p in parts)
    for i, p in enumerate(parts):
        if p <= 0:
            raise InvalidPartitionError(f'Partition {list(parts)} has a non-positive part.')
        if i and p > parts[i - 1]:
            raise InvalidPartitionError(f'Partition {list(parts)} is not in decreasing order.')
    return parts


def weight(partition: Partition) -> int:
    return sum(partition)


@cache
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order.

    The order is the canonical column order of character tables and the
    serialization order of every cache file.
    """
    if n < 0:
        raise InvalidPartitionError(f'cannot partition a negative integer ({n})')
    if n == 0:
        return ((),)
    result = []
    for part_counts in sympy_partitions(n):
        # sympy reuses the dict between iterations
        parts = []
        for part, count in part_counts.items():
            parts.extend([part] * count)
        result.append(tuple(sorted(parts, reverse=True)))
    result.sort(reverse=True)
    return tuple(result)


@cache
def partition_index(n: int) -> dict[Partition, int]:
    return {lam: i for i, lam in enumerate(enumerate_partitions(n))}


@cache
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        first = n - k * (3 * k - 1) // 2
        if first < 0:
            break
        second = first - k
        sign = 1 if k % 2 else -1
        total += sign * (partition_count(first) + partition_count(second))
        k += 1
    return total


def conjugate(partition: Partition) -> Partition:
    if not partition:
        return ()
    return tuple(sum(1 for p in partition if p > col) for col in range(partition[0]))


def multiplicities(partition: Partition) -> Counter:
    return Counter(partition)


@cache
def z_lambda(partition: Partition) -> int:
    """Centralizer order z_λ = Π j^{m_j} m_j!."""
    return prod(j ** m * factorial(m) for j, m in multiplicities(partition).items())


@cache
def class_size(partition: Partition) -> int:
    """Number of permutations with cycle type ``partition``."""
    return factorial(weight(partition)) // z_lambda(partition)


@cache
def hook_dimension(partition: Partition) -> int:
    """dim V_λ by the hook length formula."""
    conj = conjugate(partition)
    hooks = 1
    for row, length in enumerate(partition):
        for col in range(length):
            hooks *= (length - col - 1) + (conj[col] - row - 1) + 1
    return factorial(weight(partition)) // hooks


def first_row_grow(partition: Partition, m: int, n: int) -> Partition:
    """Add ``n - m`` boxes to the first row of a partition of ``m``."""
    if weight(partition) != m:
        raise InvalidPartitionError(f'{format_partition(partition)} is not a partition of {m}')
    if n <= m:
        raise InvalidPartitionError(f'first-row growth needs n > m, got n={n}, m={m}')
    if not partition:
        return (n,)
    grown = (partition[0] + (n - m),) + partition[1:]
    return check_partition(grown)


def stirling_cycle(n: int, k: int) -> int:
    """Signless Stirling number of the first kind c(n, k)."""
    if n < 0 or k < 0:
        return 0
    return int(stirling(n, k, kind=1, signed=False))


def format_partition(partition: Partition) -> str:
    return '[' + ','.join(str(p) for p in partition) + ']'


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not (text.startswith('[') and text.endswith(']')):
        raise InvalidPartitionError(f'not a bracketed partition: {text!r}')
    body = text[1:-1].strip()
    if not body:
        return ()
    try:
        return check_partition(int(p) for p in body.split(','))
    except ValueError as exc:
        if isinstance(exc, InvalidPartitionError):
            raise
        raise InvalidPartitionError(f'not a partition: {text!r}') from exc
