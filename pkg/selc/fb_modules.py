"""FB-modules: one S_n-representation per degree n.

Only multiplicity data is carried; the FI and FI♯ morphisms are never
materialized. Each module is explicit through ``defined_through``; beyond
that it is either undefined or, when a stable tail has been detected and
recorded, obtained by growing first rows from the degree-``stable_from``
seed.
"""

import logging
from dataclasses import dataclass, replace

from .exceptions import InvalidPartitionError, UndefinedDegreeError
from .partitions import first_row_grow, format_partition
from .rep_algebra import RepDecomposition, format_rep, irreducible, kronecker, parse_rep

logger = logging.getLogger(__name__)

FB_HEADER = 'fbmod v1'


@dataclass(frozen=True)
class FBModule:
    support: tuple[tuple[int, RepDecomposition], ...]
    defined_through: int
    stable_from: int | None = None

    @classmethod
    def from_degrees(cls, degrees, defined_through=None, stable_from=None):
        """Build from ``{n: RepDecomposition}``; zero degrees are dropped."""
        for n, rep in degrees.items():
            if rep.n != n:
                raise InvalidPartitionError(f'decomposition of weight {rep.n} stored in degree {n}')
        if defined_through is None:
            defined_through = max(degrees, default=0)
        if stable_from is not None and stable_from > defined_through:
            raise UndefinedDegreeError(stable_from)
        support = tuple(sorted((n, rep) for n, rep in degrees.items() if rep and n <= defined_through))
        return cls(support, defined_through, stable_from)

    @classmethod
    def zero(cls, defined_through=0):
        return cls((), defined_through)

    @property
    def degrees(self) -> dict:
        return dict(self.support)

    def __getitem__(self, n: int) -> RepDecomposition:
        return self.degree(n)

    def degree(self, n: int) -> RepDecomposition:
        if n < 0:
            raise UndefinedDegreeError(n)
        if n <= self.defined_through:
            return self.degrees.get(n) or RepDecomposition.zero(n)
        if self.stable_from is not None:
            return extend_stable(self, self.stable_from, n)
        raise UndefinedDegreeError(n)

    def is_defined(self, n: int) -> bool:
        return 0 <= n <= self.defined_through or self.stable_from is not None

    def dimension_series(self, up_to=None) -> list[int]:
        up_to = self.defined_through if up_to is None else up_to
        return [self.degree(n).dimension() for n in range(up_to + 1)]

    def with_stable_tail(self, m: int) -> 'FBModule':
        if m > self.defined_through:
            raise UndefinedDegreeError(m)
        return replace(self, stable_from=m)

    def __str__(self):
        return format_fb_module(self)


def trivial_module(defined_through: int) -> FBModule:
    """V_(n) in every degree, with its stable tail recorded from degree 0."""
    degrees = {n: irreducible((n,) if n else ()) for n in range(defined_through + 1)}
    return FBModule.from_degrees(degrees, defined_through, stable_from=0)


def _check_defined(module, up_to):
    if not module.is_defined(up_to):
        raise UndefinedDegreeError(up_to)


def tensor(v: FBModule, w: FBModule, up_to: int, store=None) -> FBModule:
    """(V⊗W)_n = V_n ⊗ W_n for n ≤ up_to."""
    _check_defined(v, up_to)
    _check_defined(w, up_to)
    degrees = {}
    for n in range(up_to + 1):
        degrees[n] = kronecker(v.degree(n), w.degree(n), store)
        logger.debug('tensor degree %d: %s', n, format_rep(degrees[n]))
    return FBModule.from_degrees(degrees, up_to)


def direct_sum(v: FBModule, w: FBModule, up_to: int | None = None) -> FBModule:
    if up_to is None:
        up_to = min(v.defined_through, w.defined_through)
    _check_defined(v, up_to)
    _check_defined(w, up_to)
    return FBModule.from_degrees({n: v.degree(n) + w.degree(n) for n in range(up_to + 1)}, up_to)


@dataclass(frozen=True)
class Containment:
    contained: bool
    witness: tuple | None = None
    small_mult: int = 0
    big_mult: int = 0

    def __bool__(self):
        return self.contained

    def describe(self) -> str:
        if self.contained:
            return 'contained'
        n, lam = self.witness
        return f'violated at n={n}, {format_partition(lam)}: {self.small_mult} > {self.big_mult}'


def contains_rep(big: RepDecomposition, small: RepDecomposition) -> tuple | None:
    """The first λ (canonical order) with mult_small(λ) > mult_big(λ), or None."""
    big_mults = big.mults
    for lam, mult in small.terms:
        if mult > big_mults.get(lam, 0):
            return lam, mult, big_mults.get(lam, 0)
    return None


def contains(big: FBModule, small: FBModule, up_to: int) -> Containment:
    """Degreewise multiplicity containment small ⊆ big through ``up_to``."""
    _check_defined(big, up_to)
    _check_defined(small, up_to)
    for n in range(up_to + 1):
        violation = contains_rep(big.degree(n), small.degree(n))
        if violation is not None:
            lam, small_mult, big_mult = violation
            return Containment(False, (n, lam), small_mult, big_mult)
    return Containment(True)


def grow_rep(rep: RepDecomposition, n: int) -> RepDecomposition:
    mults = {}
    for lam, mult in rep.terms:
        mu = first_row_grow(lam, rep.n, n)
        mults[mu] = mults.get(mu, 0) + mult
    return RepDecomposition.from_mults(n, mults)


def extend_stable(v: FBModule, m: int, n: int) -> RepDecomposition:
    """Degree-n decomposition grown summand-wise from the degree-m seed."""
    if n <= m:
        raise InvalidPartitionError(f'stable extension needs n > m, got n={n}, m={m}')
    if m > v.defined_through:
        raise UndefinedDegreeError(m)
    seed = v.degrees.get(m) or RepDecomposition.zero(m)
    return grow_rep(seed, n)


def stabilization_degree(v: FBModule, search_up_to: int) -> int | None:
    """Least m whose first-row growth reproduces every degree in (m, search_up_to].

    Returns None ("not yet stable") when even the last step fails, i.e. no
    m < search_up_to has supporting evidence.
    """
    _check_defined(v, search_up_to)
    explicit = [v.degree(n) for n in range(search_up_to + 1)]
    stable = None
    # scan downward: m works iff m+1 works and degree m+1 is the growth of degree m
    for m in range(search_up_to - 1, -1, -1):
        if grow_rep(explicit[m], m + 1) != explicit[m + 1]:
            break
        stable = m
    return stable


def truncate_below(v: FBModule, n: int) -> FBModule:
    """V_{<n}: degrees below n kept, everything else zero."""
    return FBModule.from_degrees(
        {d: rep for d, rep in v.support if d < n}, max(v.defined_through, n)
    )


def format_fb_module(v: FBModule, header: str = FB_HEADER) -> str:
    lines = [header, f'defined_through={v.defined_through}']
    for n, rep in v.support:
        lines.append(f'n={n} : {format_rep(rep)}')
    if v.stable_from is not None:
        lines.append(f'stable_from={v.stable_from}')
    return '\n'.join(lines) + '\n'


def parse_fb_module(text: str, header: str = FB_HEADER) -> FBModule:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != header:
        raise ValueError(f'expected header {header!r}')
    degrees = {}
    defined_through = None
    stable_from = None
    for line in lines[1:]:
        if line.startswith('defined_through='):
            defined_through = int(line.split('=', 1)[1])
        elif line.startswith('stable_from='):
            stable_from = int(line.split('=', 1)[1])
        elif line.startswith('n='):
            head, sep, body = line.partition(':')
            if not sep:
                raise ValueError(f"missing ':' in {line!r}")
            n = int(head.strip()[2:])
            degrees[n] = parse_rep(body, n)
        elif '=' in line:
            # provenance and other annotations are read by the caller
            continue
        else:
            raise ValueError(f'unreadable line {line!r}')
    return FBModule.from_degrees(degrees, defined_through, stable_from)
