"""S_n-representations up to isomorphism, as multiplicities of irreducibles."""

import logging
from dataclasses import dataclass
from functools import lru_cache

from .characters import CharacterVector, character_table, inner_product
from .exceptions import InvalidPartitionError, VirtualCharacterError, WeightMismatchError
from .partitions import (
    Partition,
    check_partition,
    conjugate,
    enumerate_partitions,
    format_partition,
    hook_dimension,
    parse_partition,
    partition_index,
    weight,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RepDecomposition:
    """Σ mult(λ)·V_λ for λ ⊢ n; terms are kept in canonical partition order."""

    n: int
    terms: tuple[tuple[Partition, int], ...] = ()

    @classmethod
    def from_mults(cls, n, mults):
        index = partition_index(n)
        terms = []
        for lam, mult in mults.items():
            lam = check_partition(lam)
            if weight(lam) != n:
                raise WeightMismatchError(weight(lam), n, what=f'{format_partition(lam)} in degree {n}')
            if mult < 0:
                raise VirtualCharacterError(lam, mult, message='negative multiplicity')
            if mult:
                terms.append((lam, int(mult)))
        terms.sort(key=lambda term: index[term[0]])
        return cls(n, tuple(terms))

    @classmethod
    def zero(cls, n):
        return cls(n)

    @property
    def mults(self) -> dict:
        return dict(self.terms)

    def __getitem__(self, label):
        return self.mults.get(tuple(label), 0)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if self.n != other.n:
            raise WeightMismatchError(self.n, other.n)
        total = self.mults
        for lam, mult in other.terms:
            total[lam] = total.get(lam, 0) + mult
        return RepDecomposition.from_mults(self.n, total)

    def __mul__(self, scalar: int):
        return RepDecomposition.from_mults(self.n, {lam: mult * scalar for lam, mult in self.terms})

    __rmul__ = __mul__

    def __str__(self):
        return format_rep(self)

    def dimension(self) -> int:
        return sum(mult * hook_dimension(lam) for lam, mult in self.terms)


def irreducible(label) -> RepDecomposition:
    label = check_partition(label)
    return RepDecomposition(weight(label), ((label, 1),))


def regular_rep(n: int) -> RepDecomposition:
    return RepDecomposition.from_mults(n, {lam: hook_dimension(lam) for lam in enumerate_partitions(n)})


def subtract(big: RepDecomposition, small: RepDecomposition) -> RepDecomposition:
    """``big - small``; raises VirtualCharacterError on the first negative multiplicity."""
    if big.n != small.n:
        raise WeightMismatchError(big.n, small.n)
    remainder = big.mults
    for lam, mult in small.terms:
        left = remainder.get(lam, 0) - mult
        if left < 0:
            raise VirtualCharacterError(lam, left, message='negative difference')
        remainder[lam] = left
    return RepDecomposition.from_mults(big.n, remainder)


def difference(big: RepDecomposition, small: RepDecomposition) -> dict:
    """Signed multiplicity differences ``big - small`` (zeros dropped)."""
    if big.n != small.n:
        raise WeightMismatchError(big.n, small.n)
    diff = big.mults
    for lam, mult in small.terms:
        diff[lam] = diff.get(lam, 0) - mult
    return {lam: m for lam, m in diff.items() if m}


def character_of(rep: RepDecomposition, store=None) -> CharacterVector:
    table = character_table(rep.n, store)
    chi = CharacterVector.zero(rep.n)
    for lam, mult in rep.terms:
        chi = chi + mult * table.row(lam)
    return chi


def decompose(chi: CharacterVector, store=None) -> RepDecomposition:
    """Multiplicities ⟨χ, χ_λ⟩; a fractional or negative one is a VirtualCharacterError."""
    table = character_table(chi.n, store)
    mults = {}
    for lam, row in table:
        mult = inner_product(chi, row)
        if mult.denominator != 1 or mult < 0:
            raise VirtualCharacterError(lam, mult)
        if mult:
            mults[lam] = int(mult)
    return RepDecomposition.from_mults(chi.n, mults)


def kronecker(a: RepDecomposition, b: RepDecomposition, store=None) -> RepDecomposition:
    """Inner tensor product a ⊗ b of two S_n-representations."""
    if a.n != b.n:
        raise WeightMismatchError(a.n, b.n)
    if not a or not b:
        return RepDecomposition.zero(a.n)
    return decompose(character_of(a, store) * character_of(b, store), store)


@lru_cache(maxsize=None)
def horizontal_strips(shape: Partition, boxes: int) -> tuple[Partition, ...]:
    """Every μ ⊇ shape with μ/shape a horizontal strip of ``boxes`` cells."""
    rows = list(shape) + [0]
    results = []

    def place(row, remaining, grown):
        if row == len(rows):
            if remaining == 0:
                results.append(tuple(p for p in grown if p > 0))
            return
        # row 0 is unbounded; row r may grow up to the old length of row r-1
        limit = remaining if row == 0 else min(remaining, rows[row - 1] - rows[row])
        for extra in range(limit, -1, -1):
            place(row + 1, remaining - extra, grown + [rows[row] + extra])

    place(0, boxes, [])
    return tuple(results)


def pieri_induct(rep: RepDecomposition, n: int) -> RepDecomposition:
    """Ind_{S_a×S_{n-a}}^{S_n}(rep ⊠ trivial) by the Pieri rule."""
    if n < rep.n:
        raise InvalidPartitionError(f'cannot induce from degree {rep.n} down to {n}')
    if n == rep.n:
        return rep
    mults = {}
    for lam, mult in rep.terms:
        for mu in horizontal_strips(lam, n - rep.n):
            mults[mu] = mults.get(mu, 0) + mult
    return RepDecomposition.from_mults(n, mults)


def sign_twist(rep: RepDecomposition) -> RepDecomposition:
    return RepDecomposition.from_mults(rep.n, {conjugate(lam): mult for lam, mult in rep.terms})


def format_rep(rep: RepDecomposition) -> str:
    if not rep:
        return '0'
    return ' + '.join(f'{mult}*{format_partition(lam)}' for lam, mult in rep.terms)


def parse_rep(text: str, n: int) -> RepDecomposition:
    text = text.strip()
    if text in ('', '0'):
        return RepDecomposition.zero(n)
    mults = {}
    for term in text.split(' + '):
        count, star, label = term.strip().partition('*')
        if not star:
            raise InvalidPartitionError(f'malformed term {term!r}')
        lam = parse_partition(label)
        mults[lam] = mults.get(lam, 0) + int(count)
    return RepDecomposition.from_mults(n, mults)


def dimension_check(rep: RepDecomposition, store=None) -> bool:
    """The dimension agrees with the attached character's value at the identity."""
    return character_of(rep, store).degree == rep.dimension()
