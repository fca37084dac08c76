"""The FB ↔ FI♯ correspondence at the level of multiplicities.

An FI♯-module is M(W) for the FB-module W = H₀(V) of its generators, so
inclusions of FI♯-modules are checked as degreewise inclusions of generator
modules. H₀ is computed by the recursion H₀(V)_n = V_n − M(H₀(V)_{<n})_n,
never through spans.
"""

import logging
from dataclasses import dataclass, field

from django.conf import settings

from .exceptions import NotInducedError, UndefinedDegreeError, VanishingBoundError
from .fb_modules import (
    Containment,
    FBModule,
    contains,
    format_fb_module,
    parse_fb_module,
)
from .rep_algebra import RepDecomposition, difference, pieri_induct, regular_rep

logger = logging.getLogger(__name__)

GENMOD_HEADER = 'genmod v1'


@dataclass(frozen=True)
class GeneratorModule:
    """A finitely supported FB-module W, read as the FI♯-module M(W)."""

    support: tuple[tuple[int, RepDecomposition], ...] = ()
    provenance: str = 'constructed'

    @classmethod
    def from_degrees(cls, degrees, provenance='constructed'):
        for n, rep in degrees.items():
            if rep.n != n:
                raise ValueError(f'decomposition of weight {rep.n} stored in degree {n}')
        return cls(tuple(sorted((n, rep) for n, rep in degrees.items() if rep)), provenance)

    @property
    def degrees(self) -> dict:
        return dict(self.support)

    def degree(self, n: int) -> RepDecomposition:
        return self.degrees.get(n) or RepDecomposition.zero(n)

    def __getitem__(self, n):
        return self.degree(n)

    @property
    def top_degree(self) -> int:
        return max((n for n, _ in self.support), default=0)

    def generator_degrees(self) -> list[int]:
        return [n for n, _ in self.support]

    def truncate_below(self, n: int) -> 'GeneratorModule':
        return GeneratorModule(tuple((d, rep) for d, rep in self.support if d < n), self.provenance)

    def as_fb_module(self, defined_through=None) -> FBModule:
        through = self.top_degree if defined_through is None else defined_through
        return FBModule.from_degrees(self.degrees, max(through, self.top_degree))


def m_functor(w: GeneratorModule, n: int) -> RepDecomposition:
    """M(W)_n = ⊕_{a≤n} Ind_{S_a×S_{n−a}}^{S_n} W_a ⊠ ℚ."""
    total = RepDecomposition.zero(n)
    for a, rep in w.support:
        if a <= n:
            total = total + pieri_induct(rep, n)
    return total


def m_image(w: GeneratorModule, up_to: int) -> FBModule:
    return FBModule.from_degrees({n: m_functor(w, n) for n in range(up_to + 1)}, up_to)


def free_module(m: int, n: int) -> RepDecomposition:
    """M(m)_n: injections [m] ↪ [n], i.e. M of the regular representation of S_m."""
    return m_functor(GeneratorModule.from_degrees({m: regular_rep(m)}), n)


@dataclass(frozen=True)
class HZeroResult:
    generators: GeneratorModule
    induced: dict = field(default_factory=dict)
    window: tuple[int, ...] = ()


def h_zero_trace(v: FBModule, vanish_above: int, slack: int | None = None) -> HZeroResult:
    """H₀ together with the per-degree M(H₀(V)_{<n})_n rows it subtracted."""
    slack = settings.EQLC_CONSISTENCY_SLACK if slack is None else slack
    if slack < 1:
        raise ValueError(f'the consistency window needs slack >= 1, got {slack}')
    top = vanish_above + slack
    if not v.is_defined(top):
        raise UndefinedDegreeError(top)
    generators = {}
    induced = {}
    for n in range(vanish_above + 1):
        so_far = GeneratorModule.from_degrees(generators)
        induced[n] = m_functor(so_far, n)
        diff = difference(v.degree(n), induced[n])
        for lam, mult in diff.items():
            if mult < 0:
                raise NotInducedError(n, lam, mult)
        if diff:
            generators[n] = RepDecomposition.from_mults(n, diff)
            logger.debug('H0 degree %d: %s', n, generators[n])
    result = GeneratorModule.from_degrees(generators, provenance='computed')
    for n in range(vanish_above + 1, top + 1):
        rebuilt = m_functor(result, n)
        diff = difference(v.degree(n), rebuilt)
        if diff:
            witness = next(iter(diff))
            raise VanishingBoundError(n, witness, vanish_above)
    return HZeroResult(result, induced, tuple(range(vanish_above + 1, top + 1)))


def h_zero(v: FBModule, vanish_above: int, slack: int | None = None) -> GeneratorModule:
    """Generators of an induced module, checked on a window above ``vanish_above``."""
    return h_zero_trace(v, vanish_above, slack).generators


@dataclass(frozen=True)
class FISharpContainment:
    containment: Containment
    small_generators: GeneratorModule
    big_generators: GeneratorModule

    def __bool__(self):
        return self.containment.contained


def generators_contain(big: GeneratorModule, small: GeneratorModule) -> Containment:
    top = max(big.top_degree, small.top_degree)
    return contains(big.as_fb_module(top), small.as_fb_module(top), top)


def fisharp_contains(x: FBModule, y: FBModule, vanish_above: int, slack: int | None = None) -> FISharpContainment:
    """Whether M(H₀(x)) ↪ M(H₀(y)), decided on generators."""
    small = h_zero(x, vanish_above, slack)
    big = h_zero(y, vanish_above, slack)
    return FISharpContainment(generators_contain(big, small), small, big)


def format_generator_module(w: GeneratorModule) -> str:
    text = format_fb_module(w.as_fb_module(), header=GENMOD_HEADER)
    head, _, rest = text.partition('\n')
    return f'{head}\nprovenance={w.provenance}\n{rest}'


def parse_generator_module(text: str) -> GeneratorModule:
    provenance = None
    for line in text.splitlines():
        if line.strip().startswith('provenance='):
            provenance = line.strip().split('=', 1)[1]
    if not provenance:
        raise ValueError('generator module without a provenance line')
    module = parse_fb_module(text, header=GENMOD_HEADER)
    return GeneratorModule.from_degrees(module.degrees, provenance)
