"""Orchestration of the FI♯-level log-concavity checks.

For each (i, j, k, ℓ) with i < j ≤ k < ℓ and i + ℓ = j + k = m, the
generator modules H₀(V^i ⊗ V^ℓ) and H₀(V^j ⊗ V^k) are computed up to the
vanishing bound 2m (plus the consistency window) and compared degreewise.
Generator modules of the factors are computed once per (family, degree) and
reused by every quadruple.
"""

import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import django
from django.conf import settings

from .characters import character_table
from .conf_cohomology import (
    Family,
    conf_decomposition,
    conf_fb_module,
    conf_generators,
    poincare_dimension,
)
from .exceptions import CacheCorruptionError, EngineError
from .fb_modules import contains_rep, tensor
from .fi_sharp import fisharp_contains, m_image
from .partitions import class_size, enumerate_partitions, format_partition, parse_partition
from .rep_algebra import character_of, kronecker
from .reproduce import discrepancy_note
from .store import resolve_store

logger = logging.getLogger(__name__)

DESK_MAX_SUM = 6
TIER2_MAX_SUM = 10
LONG_RUN_MAX_SUM = 19
SPOT_CHECKS = 3


@dataclass(frozen=True, order=True)
class Quadruple:
    i: int
    j: int
    k: int
    l: int  # noqa: E741

    @property
    def m(self):
        return self.i + self.l

    def __str__(self):
        return f'({self.i},{self.j},{self.k},{self.l})'


def enumerate_quadruples(m: int) -> list[Quadruple]:
    """All i < j ≤ k < ℓ of positive integers with i + ℓ = j + k = m."""
    if m < 2:
        raise EngineError(f'degree sum must be at least 2, got {m}')
    quadruples = []
    for i in range(1, m):
        l = m - i  # noqa: E741
        for j in range(i + 1, m):
            k = m - j
            if j <= k < l:
                quadruples.append(Quadruple(i, j, k, l))
    return quadruples


@dataclass
class QuadrupleVerdict:
    family: str
    quadruple: Quadruple
    verdict: str
    witness: tuple | None = None
    bound: int = 0
    tier: str = 'auto'
    millis: int = 0
    window: tuple = ()
    spot_checks: list = field(default_factory=list)
    message: str = ''

    @property
    def contained(self):
        return self.verdict == 'contained'

    def record(self) -> dict:
        q = self.quadruple
        witness = None
        if self.witness is not None:
            witness = {'n': self.witness[0], 'partition': format_partition(self.witness[1])}
        return {
            'family': self.family,
            'i': q.i,
            'j': q.j,
            'k': q.k,
            'l': q.l,
            'm': q.m,
            'verdict': self.verdict,
            'witness': witness,
            'bound': self.bound,
            'tier': self.tier,
            'millis': self.millis,
        }

    def describe(self) -> str:
        q = self.quadruple
        head = f'{self.family}^{q.i}⊗{self.family}^{q.l} ↪ {self.family}^{q.j}⊗{self.family}^{q.k}'
        if self.verdict == 'contained':
            tail = 'contained'
        elif self.verdict == 'violated':
            n, lam = self.witness
            tail = f'violated at n={n}, {format_partition(lam)}'
        else:
            tail = f'error: {self.message}'
        return f'{head} (m={q.m}, bound={self.bound}, tier={self.tier}): {tail}'


@dataclass
class VerificationReport:
    family: str
    degree_sums: list
    verdicts: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def all_contained(self):
        return all(v.contained for v in self.verdicts)

    def merge(self, other: 'VerificationReport'):
        self.degree_sums.extend(other.degree_sums)
        self.verdicts.extend(other.verdicts)
        self.flags.extend(f for f in other.flags if f not in self.flags)

    def structured(self) -> str:
        return '\n'.join(json.dumps(v.record(), ensure_ascii=False) for v in self.verdicts)

    def text(self) -> str:
        lines = [v.describe() for v in self.verdicts]
        lines.extend(f'note: {flag}' for flag in self.flags)
        return '\n'.join(lines)


def resolved_tier(fam: Family, degrees, policy: str) -> str:
    """The tier(s) the generator computations for ``degrees`` will actually use."""
    if policy != 'auto':
        return policy
    slack = settings.EQLC_CONSISTENCY_SLACK
    over = any(
        poincare_dimension(n, d) > settings.EQLC_ORACLE_BUDGET
        for d in degrees
        for n in range(2 * d + slack + 1)
    )
    return 'oracle+plethysm' if over else 'oracle'


def _init_worker():
    django.setup()


def _direct_multiplicity(a, b, label, store) -> int:
    """mult of V_label in a ⊗ b as (1/n!) Σ |C_μ| χ_a(μ) χ_b(μ) χ_label(μ)."""
    n = a.n
    chi_a = character_of(a, store)
    chi_b = character_of(b, store)
    chi_l = character_table(n, store).row(label)
    total = sum(
        class_size(mu) * x * y * z
        for mu, x, y, z in zip(enumerate_partitions(n), chi_a.values, chi_b.values, chi_l.values)
    )
    value = Fraction(total, factorial(n))
    if value.denominator != 1:
        raise EngineError(f'non-integral Kronecker multiplicity at {format_partition(label)}')
    return int(value)


def _spot_check(factors, x, y, result, q, bound, store):
    """Re-derive three random (n, λ) multiplicities from characters."""
    rng = random.Random(f'{q.i}-{q.j}-{q.k}-{q.l}')
    checks = []
    degrees = list(range(1, bound + 1))
    for _ in range(SPOT_CHECKS):
        n = rng.choice(degrees)
        lam = rng.choice(enumerate_partitions(n))
        small = _direct_multiplicity(factors[q.i].degree(n), factors[q.l].degree(n), lam, store)
        big = _direct_multiplicity(factors[q.j].degree(n), factors[q.k].degree(n), lam, store)
        if small != x.degree(n)[lam] or big != y.degree(n)[lam]:
            raise EngineError(f'spot check disagrees with the tensor decomposition at n={n}, {format_partition(lam)}')
        small_gen = result.small_generators.degree(n)[lam]
        big_gen = result.big_generators.degree(n)[lam]
        if small_gen > big_gen:
            raise EngineError(f'spot check contradicts the containment at n={n}, {format_partition(lam)}')
        checks.append((n, format_partition(lam), small_gen, big_gen))
    return checks


def verify_quadruple(fam, q: Quadruple, tier='auto', store=None, swap=False, slack=None) -> QuadrupleVerdict:
    fam = Family.parse(fam)
    store = resolve_store(store)
    slack = settings.EQLC_CONSISTENCY_SLACK if slack is None else slack
    bound = 2 * q.m
    top = bound + slack
    started = time.perf_counter()
    verdict = QuadrupleVerdict(fam.value, q, 'error', bound=bound, tier=resolved_tier(fam, {q.i, q.j, q.k, q.l}, tier))
    try:
        factors = {d: m_image(conf_generators(fam, d, tier, store), top) for d in {q.i, q.j, q.k, q.l}}
        x = tensor(factors[q.i], factors[q.l], top, store)
        y = tensor(factors[q.j], factors[q.k], top, store)
        if swap:
            x, y = y, x
        result = fisharp_contains(x, y, bound, slack)
        verdict.window = tuple(range(bound + 1, top + 1))
        if result.containment.contained:
            verdict.verdict = 'contained'
            if not swap:
                verdict.spot_checks = _spot_check(factors, x, y, result, q, bound, store)
        else:
            verdict.verdict = 'violated'
            verdict.witness = result.containment.witness
            n, lam = verdict.witness
            # the witness must be a genuine multiplicity violation
            if result.small_generators.degree(n)[lam] <= result.big_generators.degree(n)[lam]:
                raise EngineError(f'witness (n={n}, {format_partition(lam)}) is not a violation')
    except EngineError as exc:
        verdict.verdict = 'error'
        verdict.message = str(exc)
        logger.error('%s %s failed: %s', fam.value, q, exc)
    verdict.millis = int((time.perf_counter() - started) * 1000)
    logger.info('%s', verdict.describe())
    return verdict


def _verdict_key(fam, q, swap):
    suffix = '-swap' if swap else ''
    return ('verdict', f'{fam.value}-{q.i}-{q.j}-{q.k}-{q.l}{suffix}.json')


def _load_checkpoint(store, fam, q, swap):
    text = store.read(*_verdict_key(fam, q, swap))
    if text is None:
        return None
    try:
        record = json.loads(text)
        witness = None
        if record['witness']:
            witness = (record['witness']['n'], parse_partition(record['witness']['partition']))
        verdict = QuadrupleVerdict(
            record['family'], q, record['verdict'], witness, record['bound'], record['tier'], record['millis']
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise CacheCorruptionError(store.path(*_verdict_key(fam, q, swap)), f'unreadable verdict: {exc}') from exc
    if verdict.family != fam.value or verdict.verdict not in ('contained', 'violated'):
        raise CacheCorruptionError(store.path(*_verdict_key(fam, q, swap)), 'verdict does not match its key')
    return verdict


def verify_degree(fam, m: int, tier='auto', store=None, jobs=None, swap=False, long_run=False) -> VerificationReport:
    """FI♯-level containment for every quadruple of degree sum m."""
    check_scale(m, tier, long_run)
    fam = Family.parse(fam)
    store = resolve_store(store)
    jobs = settings.EQLC_JOBS if jobs is None else jobs
    quadruples = enumerate_quadruples(m)
    report = VerificationReport(fam.value, [m])
    degrees = sorted({d for q in quadruples for d in (q.i, q.j, q.k, q.l)})
    for d in degrees:
        try:
            conf_generators(fam, d, tier, store, jobs)
        except EngineError as exc:
            # the affected quadruples record the same failure
            logger.error('generators of %s^%d: %s', fam.value, d, exc)
    if resolved_tier(fam, degrees, tier) == 'oracle+plethysm':
        report.flags.append(f'{fam.value}, m={m}: degrees beyond the oracle budget used the calibrated plethystic tier')
    for q in quadruples:
        for a, b in ((q.i, q.l), (q.j, q.k)):
            note = discrepancy_note(fam, a, b)
            if note is not None and note not in report.flags:
                report.flags.append(note)

    pending = []
    results = {}
    for q in quadruples:
        cached = _load_checkpoint(store, fam, q, swap) if long_run else None
        if cached is not None:
            results[q] = cached
        else:
            pending.append(q)

    if jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker) as pool:
            futures = {q: pool.submit(verify_quadruple, fam.value, q, tier, str(store.root), swap) for q in pending}
            for q, future in futures.items():
                results[q] = future.result()
    else:
        for q in pending:
            results[q] = verify_quadruple(fam, q, tier, store, swap)

    for q in quadruples:
        verdict = results[q]
        if long_run and verdict.verdict != 'error':
            store.write(json.dumps(verdict.record(), ensure_ascii=False) + '\n', *_verdict_key(fam, q, swap))
        report.verdicts.append(verdict)
    return report


def check_scale(m: int, tier: str, long_run: bool):
    """Refuse degree sums the requested tier and run mode cannot reach."""
    if m > TIER2_MAX_SUM and not long_run:
        raise EngineError(f'degree sum {m} needs cluster-scale tables; pass --long-run')
    if m > DESK_MAX_SUM and tier == 'oracle':
        raise EngineError(f'degree sum {m} requires the calibrated plethystic tier (--tier auto or plethysm)')
    if m > LONG_RUN_MAX_SUM:
        logger.warning('degree sum %d is beyond the range checked so far', m)


def verify_up_to(fam, max_sum: int, tier='auto', store=None, jobs=None, swap=False, long_run=False) -> VerificationReport:
    check_scale(max_sum, tier, long_run)
    report = VerificationReport(Family.parse(fam).value, [])
    for m in range(4, max_sum + 1):
        report.merge(verify_degree(fam, m, tier, store, jobs, swap, long_run))
    return report


@dataclass
class SelcVerdict:
    family: str
    m: int
    n: int
    results: list = field(default_factory=list)

    @property
    def contained(self):
        return all(ok for _, ok, _ in self.results)


def check_graded_selc(fam, m: int, n: int, tier='auto', store=None) -> SelcVerdict:
    """FB-level check V^i_n ⊗ V^ℓ_n ⊆ V^j_n ⊗ V^k_n at a fixed number of points."""
    fam = Family.parse(fam)
    store = resolve_store(store)
    verdict = SelcVerdict(fam.value, m, n)
    if m < 4:
        return verdict
    pieces = {}
    for q in enumerate_quadruples(m):
        for d in (q.i, q.j, q.k, q.l):
            if d not in pieces:
                pieces[d] = conf_decomposition(fam, d, n, tier, store)
        small = kronecker(pieces[q.i], pieces[q.l], store)
        big = kronecker(pieces[q.j], pieces[q.k], store)
        violation = contains_rep(big, small)
        witness = None if violation is None else (n, violation[0])
        verdict.results.append((q, violation is None, witness))
    return verdict


@dataclass
class StabilityReport:
    family: str
    degree: int
    points: int
    detected: int | None
    sharp_bound: int
    vanishing_bound: int
    tensor_bound: int

    @property
    def sharp(self):
        return self.detected == self.sharp_bound

    def describe(self) -> str:
        detected = 'not yet stable' if self.detected is None else f'stabilizes at {self.detected}'
        return (
            f'{self.family}^{self.degree} through n={self.points}: {detected} '
            f"(sharp bound {self.sharp_bound}, {'sharp' if self.sharp else 'NOT sharp'}); "
            f'{self.family}^{self.degree}⊗{self.family}^{self.degree} stabilizes by {self.tensor_bound}, '
            f'its generators vanish above {self.vanishing_bound}'
        )


def stability_report(fam, i: int, points=None, tier='auto', store=None) -> StabilityReport:
    """Detected stable degree of the family's degree-i piece against the sharp bound."""
    fam = Family.parse(fam)
    sharp = fam.sharp_stable_degree(i)
    points = sharp + 2 if points is None else points
    module = conf_fb_module(fam, i, points, tier, store)
    return StabilityReport(fam.value, i, points, module.stable_from, sharp, 4 * i, 2 * sharp)

