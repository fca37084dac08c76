"""Characters of A^i_n = H^i(Conf(n, ℝ²)) and C^i_n = H^{2i}(Conf(n, ℝ³)).

Two tiers compute the same characters:

* the oracle traces the permutation action on the no-broken-circuit basis,
  rewriting images back to normal form with the Arnold relation;
* the plethystic tier assembles Frobenius characteristics from Lie
  characters, with sign conventions pinned by comparison with the oracle.

Generator modules (H₀ of A^i and C^i) live in degrees i+1 through 2i, so the
pipeline only ever needs characters up to degree 2i plus Pieri growth.
"""

import enum
import logging
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations, product

from django.conf import settings

from .characters import CharacterVector, character_table
from .exceptions import (
    BudgetExceededError,
    CacheCorruptionError,
    CalibrationError,
    EngineError,
    GeneratorBandError,
    TierDisagreementError,
)
from .fb_modules import FBModule, stabilization_degree
from .fi_sharp import (
    GeneratorModule,
    format_generator_module,
    h_zero,
    m_image,
    parse_generator_module,
)
from .partitions import enumerate_partitions, stirling_cycle
from .rep_algebra import RepDecomposition, decompose, format_rep, irreducible, parse_rep
from .store import resolve_store
from .symfunc import SymFunc, complete, elementary, lie_character, multiply, omega, plethysm, to_character

logger = logging.getLogger(__name__)

TIERS = ('oracle', 'plethysm', 'auto')

# Plethystic results are re-checked against the oracle when its basis is this small.
CROSS_CHECK_SIZE = 2000


class Family(enum.Enum):
    A = 'A'
    C = 'C'

    @property
    def swap_sign(self) -> int:
        """ω_ab = swap_sign · ω_ba."""
        return 1 if self is Family.A else -1

    @property
    def commute_sign(self) -> int:
        """Sign picked up when two generators are transposed."""
        return -1 if self is Family.A else 1

    def sharp_stable_degree(self, i: int) -> int:
        """Degree at which the degree-i piece stabilizes sharply."""
        return 3 * i + 1 if self is Family.A else 3 * i

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise EngineError(f'unknown family {value!r}; expected A or C') from None


def family_for_dimension(d: int) -> Family:
    """H*(Conf(n, ℝ^d)) matches A for even d and C for odd d, up to regrading."""
    if d < 2:
        raise EngineError(f'configuration spaces of ℝ^{d} have no Arnold presentation')
    return Family.A if d % 2 == 0 else Family.C


def cohomological_degree(d: int, i: int) -> int:
    return i * (d - 1)


# A normal-form monomial is a tuple of pairs (a, b) with a > b ≥ 1 and the
# larger indices strictly increasing.
NbcMonomial = tuple[tuple[int, int], ...]


@lru_cache(maxsize=64)
def nbc_basis(n: int, i: int) -> tuple[NbcMonomial, ...]:
    """Normal-form monomials of degree i on n points; there are c(n, n−i)."""
    basis = []
    for tops in combinations(range(2, n + 1), i):
        for bottoms in product(*(range(1, a) for a in tops)):
            basis.append(tuple(zip(tops, bottoms)))
    return tuple(basis)


def poincare_dimension(n: int, i: int) -> int:
    return stirling_cycle(n, n - i) if 0 <= i <= max(n - 1, 0) else 0


def _orient(word, fam: Family, n=None):
    sign = 1
    oriented = []
    for x, y in word:
        if x == y or min(x, y) < 1 or (n is not None and max(x, y) > n):
            raise EngineError(f'generator index out of range: ω_{x}{y}' + (f' on {n} points' if n else ''))
        if x > y:
            oriented.append((x, y))
        else:
            oriented.append((y, x))
            sign *= fam.swap_sign
    return tuple(oriented), sign


def _sort_word(word, fam: Family):
    """Sort factors by (larger, smaller) index, returning the sign of the reordering."""
    inversions = sum(1 for s in range(len(word)) for t in range(s + 1, len(word)) if word[s] > word[t])
    sign = fam.commute_sign if inversions % 2 else 1
    return tuple(sorted(word)), sign


def _first_conflict(word):
    for t in range(len(word) - 1):
        if word[t][0] == word[t + 1][0]:
            return t
    return None


def _arnold_rewrite(word, t, fam: Family):
    """g(c,b)g(c,a) = −g(a,b)g(c,b) − s·g(c,a)g(a,b) for c > a > b at positions t, t+1."""
    (c, b), (_, a) = word[t], word[t + 1]
    head, tail = word[:t], word[t + 2:]
    return (
        (head + ((a, b), (c, b)) + tail, -1),
        (head + ((c, a), (a, b)) + tail, -fam.swap_sign),
    )


@lru_cache(maxsize=1 << 18)
def _reduce(word, fam: Family) -> tuple:
    if len(set(word)) < len(word):
        return ()
    word, sign = _sort_word(word, fam)
    t = _first_conflict(word)
    if t is None:
        return ((word, sign),)
    total = Counter()
    for rewritten, coeff in _arnold_rewrite(word, t, fam):
        for monomial, value in _reduce(rewritten, fam):
            total[monomial] += sign * coeff * value
    return tuple((m, v) for m, v in sorted(total.items()) if v)


def straighten(word, fam, n=None) -> dict:
    """Rewrite a product of generators ω_xy into a signed sum of normal-form monomials.

    Each Arnold step replaces a repeated larger index c by a smaller one, so
    the sum of larger indices strictly decreases and the rewriting terminates.
    """
    fam = Family.parse(fam)
    oriented, sign = _orient(tuple(tuple(pair) for pair in word), fam, n)
    return {monomial: sign * value for monomial, value in _reduce(oriented, fam)}


def _coefficient(word, target, target_weight, fam: Family) -> int:
    """Coefficient of ``target`` in the normal form of an oriented word."""
    if len(set(word)) < len(word):
        return 0
    if sum(a for a, _ in word) < target_weight:
        return 0
    word, sign = _sort_word(word, fam)
    t = _first_conflict(word)
    if t is None:
        return sign if word == target else 0
    if sum(a for a, _ in word) == target_weight:
        return 0
    return sign * sum(
        coeff * _coefficient(rewritten, target, target_weight, fam)
        for rewritten, coeff in _arnold_rewrite(word, t, fam)
    )


def representative(cycle_type, n: int) -> dict:
    """A permutation of [n] with the given cycle type, on consecutive blocks."""
    sigma = {}
    start = 1
    for length in cycle_type:
        for k in range(length):
            sigma[start + k] = start + (k + 1) % length
        start += length
    return sigma


def _class_trace(fam_value, i, n, cycle_type):
    fam = Family(fam_value)
    sigma = representative(cycle_type, n)
    trace = 0
    for monomial in nbc_basis(n, i):
        image, sign = _orient(tuple((sigma[a], sigma[b]) for a, b in monomial), fam)
        weight = sum(a for a, _ in monomial)
        trace += sign * _coefficient(image, monomial, weight, fam)
    return trace


def oracle_character(fam, i: int, n: int, budget: int | None = None, jobs: int = 1) -> CharacterVector:
    """Character of the family's degree-i piece on n points, by explicit traces."""
    fam = Family.parse(fam)
    if i == 0:
        return CharacterVector(n, (1,) * len(enumerate_partitions(n)))
    size = poincare_dimension(n, i)
    if size == 0:
        return CharacterVector.zero(n)
    budget = settings.EQLC_ORACLE_BUDGET if budget is None else budget
    if size > budget:
        raise BudgetExceededError(size, budget)
    classes = enumerate_partitions(n)
    args = [(fam.value, i, n, mu) for mu in classes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_class_trace, *zip(*args)))
    else:
        values = [_class_trace(*a) for a in args]
    logger.debug('oracle %s i=%d n=%d traced %d monomials', fam.value, i, n, size)
    return CharacterVector(n, tuple(values))


@dataclass(frozen=True)
class SignConvention:
    """Which plethystic factors carry a sign: ω on even Lie characters, e instead of h for even blocks."""

    twist_even_lie: bool
    exterior_even: bool

    def label(self):
        return f'twist_even_lie={int(self.twist_even_lie)} exterior_even={int(self.exterior_even)}'

    @classmethod
    def parse(cls, text):
        fields = dict(item.split('=') for item in text.split())
        flags = {name: fields[name] for name in ('twist_even_lie', 'exterior_even')}
        if set(fields) != set(flags) or not set(flags.values()) <= {'0', '1'}:
            raise ValueError(f'not a sign convention: {text!r}')
        return cls(flags['twist_even_lie'] == '1', flags['exterior_even'] == '1')


CONVENTIONS = tuple(SignConvention(t, e) for t in (False, True) for e in (False, True))


def _block_factor(j: int, m: int, convention: SignConvention) -> SymFunc:
    """The contribution of m blocks of size j: h_m or e_m plethysm the (twisted) ℓ_j."""
    inner = lie_character(j)
    if convention.twist_even_lie and j % 2 == 0:
        inner = omega(inner)
    outer = elementary(m) if convention.exterior_even and j % 2 == 0 else complete(m)
    # the factor is exact in its own degree; drop the cap so products are not truncated
    return plethysm(outer, inner.with_cap(m * j)).with_cap(None)


def plethystic_characteristic(i: int, n: int, convention: SignConvention) -> SymFunc:
    """Σ over λ ⊢ n with n − ℓ(λ) = i of Π_j F(m_j(λ), j)."""
    total = SymFunc.from_terms({}, n)
    for lam in enumerate_partitions(n):
        if n - len(lam) != i:
            continue
        counts = Counter(lam)
        factors = [_block_factor(j, m, convention) for j, m in sorted(counts.items())]
        total = total + reduce(multiply, factors, SymFunc.one(n))
    return total


def _calibration_grid():
    max_degree = settings.EQLC_CALIBRATION_MAX_DEGREE
    max_points = settings.EQLC_CALIBRATION_MAX_POINTS
    return [(i, n) for i in range(1, max_degree + 1) for n in range(i + 1, max_points + 1)]


def _grid_label():
    return f'grid i<={settings.EQLC_CALIBRATION_MAX_DEGREE} n<={settings.EQLC_CALIBRATION_MAX_POINTS}'


CALIBRATION_HEADER = re.compile(r'calibration (?P<family>[AC]) (?P<grid>grid i<=\d+ n<=\d+)')


def calibrate(fam, store=None) -> SignConvention:
    """Select the unique sign convention whose plethystic characters match the oracle on the grid."""
    fam = Family.parse(fam)
    grid = _calibration_grid()
    if not grid:
        raise CalibrationError('empty calibration grid')
    oracle = {(i, n): oracle_character(fam, i, n) for i, n in grid}
    matching = []
    for convention in CONVENTIONS:
        if all(
            to_character(plethystic_characteristic(i, n, convention).homogeneous_part(n), n) == oracle[i, n]
            for i, n in grid
        ):
            matching.append(convention)
    if len(matching) != 1:
        raise CalibrationError(
            f'{len(matching)} sign conventions match the oracle for family {fam.value} on {_grid_label()}'
        )
    logger.info('calibrated family %s: %s (%s)', fam.value, matching[0].label(), _grid_label())
    store = resolve_store(store)
    store.write(f'calibration {fam.value} {_grid_label()}\n{matching[0].label()}\n', 'calibration', f'{fam.value}.txt')
    return matching[0]


_CONVENTIONS: dict = {}


def _calibration_header(fam, text, path):
    """The grid label recorded in a calibration entry."""
    match = CALIBRATION_HEADER.fullmatch(text.splitlines()[0]) if text.strip() else None
    if match is None:
        raise CacheCorruptionError(path, 'unreadable calibration header')
    if match['family'] != fam.value:
        raise CacheCorruptionError(path, f"calibration of family {match['family']} stored for {fam.value}")
    return match['grid']


def calibrated_convention(fam, store=None, allow_calibration=True) -> SignConvention:
    fam = Family.parse(fam)
    key = (fam, _grid_label())
    if key in _CONVENTIONS:
        return _CONVENTIONS[key]
    store = resolve_store(store)
    text = store.read('calibration', f'{fam.value}.txt')
    convention = None
    if text is not None:
        path = store.path('calibration', f'{fam.value}.txt')
        grid = _calibration_header(fam, text, path)
        if grid == _grid_label():
            lines = text.splitlines()
            try:
                convention = SignConvention.parse(lines[1])
            except (IndexError, KeyError, ValueError) as exc:
                raise CacheCorruptionError(path, f'unreadable sign convention: {exc}') from exc
        else:
            logger.info('calibration of %s was made on %s; recalibrating on %s', fam.value, grid, _grid_label())
    if convention is None:
        if not allow_calibration:
            raise CalibrationError(f'calibration not performed for family {fam.value}')
        convention = calibrate(fam, store)
    _CONVENTIONS[key] = convention
    return convention


def tier2_character(fam, i: int, n: int, convention=None, store=None, cross_check=True) -> CharacterVector:
    """Character by the calibrated plethystic formula."""
    fam = Family.parse(fam)
    if i == 0:
        return CharacterVector(n, (1,) * len(enumerate_partitions(n)))
    if convention is None:
        convention = calibrated_convention(fam, store)
    f = plethystic_characteristic(i, n, convention).homogeneous_part(n)
    chi = to_character(f, n)
    if cross_check and 0 < poincare_dimension(n, i) <= CROSS_CHECK_SIZE:
        if oracle_character(fam, i, n) != chi:
            raise TierDisagreementError(f'plethystic and oracle characters differ for {fam.value} i={i} n={n}')
    return chi


def conf_character(fam, i: int, n: int, tier: str = 'auto', store=None, jobs: int = 1) -> CharacterVector:
    fam = Family.parse(fam)
    if tier not in TIERS:
        raise EngineError(f"unknown tier {tier!r}; expected one of {', '.join(TIERS)}")
    if tier == 'oracle':
        return oracle_character(fam, i, n, jobs=jobs)
    if tier == 'plethysm':
        return tier2_character(fam, i, n, store=store)
    if poincare_dimension(n, i) <= settings.EQLC_ORACLE_BUDGET:
        return oracle_character(fam, i, n, jobs=jobs)
    return tier2_character(fam, i, n, store=store)


def _conf_key(fam, i, n):
    return ('conf', f'{fam.value}-i{i}-n{n}.txt')


def conf_decomposition(fam, i: int, n: int, tier: str = 'auto', store=None, jobs: int = 1) -> RepDecomposition:
    """Decomposition of the family's degree-i piece on n points, cached."""
    fam = Family.parse(fam)
    store = resolve_store(store)
    header = f'conf {fam.value} i={i} n={n}'
    text = store.read(*_conf_key(fam, i, n))
    if text is not None:
        path = store.path(*_conf_key(fam, i, n))
        lines = text.splitlines()
        if not lines or lines[0] != header:
            raise CacheCorruptionError(path, f'expected header {header!r}')
        try:
            return parse_rep(lines[1] if len(lines) > 1 else '0', n)
        except (ValueError, EngineError) as exc:
            raise CacheCorruptionError(path, str(exc)) from exc
    character_table(n, store, jobs)
    rep = decompose(conf_character(fam, i, n, tier, store, jobs), store)
    store.write(f'{header}\n{format_rep(rep)}\n', *_conf_key(fam, i, n))
    return rep


@dataclass(frozen=True)
class StabilityCheck:
    detected: int | None
    sharp_bound: int

    @property
    def matches(self):
        return self.detected == self.sharp_bound


def evidenced_stable_degree(i: int, module: FBModule) -> int | None:
    """Detected stable degree of a degree-i piece, or None without evidence.

    Below 2i + 1 points the range has not passed the generator band, and an
    all-zero range would make every degree look stable.
    """
    if module.defined_through <= 2 * i or not module.support:
        return None
    return stabilization_degree(module, module.defined_through)


def conf_fb_module(fam, i: int, up_to: int, tier: str = 'auto', store=None, jobs: int = 1) -> FBModule:
    """The FB-module A^i or C^i through ``up_to``, annotated with its detected stable degree."""
    fam = Family.parse(fam)
    degrees = {n: conf_decomposition(fam, i, n, tier, store, jobs) for n in range(up_to + 1)}
    module = FBModule.from_degrees(degrees, up_to)
    detected = evidenced_stable_degree(i, module)
    if detected is not None:
        module = module.with_stable_tail(detected)
    return module


def stability_check(fam, i: int, module: FBModule) -> StabilityCheck:
    fam = Family.parse(fam)
    bound = fam.sharp_stable_degree(i)
    return StabilityCheck(evidenced_stable_degree(i, module), bound)


def _genmod_key(fam, i):
    return ('genmod', f'{fam.value}-i{i}.txt')


def conf_generators(fam, i: int, tier: str = 'auto', store=None, jobs: int = 1) -> GeneratorModule:
    """H₀ of A^i or C^i, checked to live in degrees [i+1, 2i]."""
    fam = Family.parse(fam)
    store = resolve_store(store)
    if i == 0:
        return GeneratorModule.from_degrees({0: irreducible(())}, provenance=f'constructed conf {fam.value} i=0')
    text = store.read(*_genmod_key(fam, i))
    if text is not None:
        try:
            return parse_generator_module(text)
        except (ValueError, EngineError) as exc:
            raise CacheCorruptionError(store.path(*_genmod_key(fam, i)), str(exc)) from exc
    slack = settings.EQLC_CONSISTENCY_SLACK
    module = conf_fb_module(fam, i, 2 * i + slack, tier, store, jobs)
    generators = h_zero(module, 2 * i, slack)
    outside = [n for n in generators.generator_degrees() if not i + 1 <= n <= 2 * i]
    if outside:
        raise GeneratorBandError(
            f'generators of {fam.value}^{i} in degrees {outside}, outside [{i + 1}, {2 * i}]'
        )
    generators = GeneratorModule(generators.support, provenance=f'computed conf {fam.value} i={i}')
    store.write(format_generator_module(generators), *_genmod_key(fam, i))
    logger.info('generators of %s^%d in degrees %s', fam.value, i, generators.generator_degrees())
    return generators


def conf_module_from_generators(fam, i: int, up_to: int, tier: str = 'auto', store=None) -> FBModule:
    """A^i or C^i through ``up_to`` as M(H₀), using only low-degree characters."""
    return m_image(conf_generators(fam, i, tier, store), up_to)
