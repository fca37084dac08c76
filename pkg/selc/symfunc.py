"""Symmetric functions with rational coefficients in the power-sum basis.

Power sums are the only internal basis: products and plethysm are
substitutions on the indexing partitions, and the Schur basis appears only
when converting to or from a ``RepDecomposition`` through the cached
character tables.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import divisors, mobius

from .characters import CharacterVector, character_table
from .exceptions import VirtualCharacterError, WeightMismatchError
from .partitions import Partition, enumerate_partitions, format_partition, weight, z_lambda
from .rep_algebra import RepDecomposition


def _order_key(label):
    # same weight never has prefix pairs, so negating gives reverse lexicographic order
    return (weight(label), tuple(-p for p in label))


@dataclass(frozen=True)
class SymFunc:
    """Σ c_μ p_μ, optionally truncated above ``cap``."""

    terms: tuple[tuple[Partition, Fraction], ...] = ()
    cap: int | None = None

    @classmethod
    def from_terms(cls, terms, cap=None):
        cleaned = {}
        for label, coeff in terms.items() if isinstance(terms, dict) else terms:
            label = tuple(sorted(label, reverse=True))
            if cap is not None and weight(label) > cap:
                continue
            cleaned[label] = cleaned.get(label, Fraction(0)) + Fraction(coeff)
        items = sorted(((lab, c) for lab, c in cleaned.items() if c), key=lambda t: _order_key(t[0]))
        return cls(tuple(items), cap)

    @classmethod
    def power_sum(cls, label, cap=None):
        return cls.from_terms({tuple(label): 1}, cap)

    @classmethod
    def one(cls, cap=None):
        return cls.from_terms({(): 1}, cap)

    @property
    def coefficients(self) -> dict:
        return dict(self.terms)

    def coefficient(self, label) -> Fraction:
        return self.coefficients.get(tuple(sorted(label, reverse=True)), Fraction(0))

    @property
    def degree(self):
        """The common weight of every term, or None when empty or inhomogeneous."""
        weights = {weight(label) for label, _ in self.terms}
        return weights.pop() if len(weights) == 1 else None

    def homogeneous_part(self, d: int) -> 'SymFunc':
        return SymFunc.from_terms({lab: c for lab, c in self.terms if weight(lab) == d})

    def with_cap(self, cap):
        return SymFunc.from_terms(self.terms, cap)

    def _merged_cap(self, other):
        caps = [c for c in (self.cap, other.cap) if c is not None]
        return min(caps) if caps else None

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        total = self.coefficients
        for label, coeff in other.terms:
            total[label] = total.get(label, Fraction(0)) + coeff
        return SymFunc.from_terms(total, self._merged_cap(other))

    def __neg__(self):
        return SymFunc.from_terms({lab: -c for lab, c in self.terms}, self.cap)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return SymFunc.from_terms({lab: c * other for lab, c in self.terms}, self.cap)

    __rmul__ = __mul__

    def __str__(self):
        if not self.terms:
            return '0'
        return ' + '.join(f'{c}*p{format_partition(lab)}' for lab, c in self.terms)


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Bilinear product with p_λ·p_μ = p_{λ∪μ}."""
    cap = f._merged_cap(g)
    product = {}
    for a, x in f.terms:
        for b, y in g.terms:
            if cap is not None and weight(a) + weight(b) > cap:
                continue
            label = tuple(sorted(a + b, reverse=True))
            product[label] = product.get(label, Fraction(0)) + x * y
    return SymFunc.from_terms(product, cap)


def _substitute(g: SymFunc, r: int, cap) -> SymFunc:
    """p_r[g]: every p_k in g becomes p_{rk}."""
    return SymFunc.from_terms({tuple(r * k for k in lab): c for lab, c in g.terms}, cap)


def plethysm(f: SymFunc, g: SymFunc, cap: int | None = None) -> SymFunc:
    """f[g], truncated at ``cap`` (defaulting to g's cap; one of them is required)."""
    cap = cap if cap is not None else g.cap
    if cap is None:
        raise ValueError('plethysm needs a degree cap on its inner argument')
    inner = {}
    result = SymFunc.from_terms({}, cap)
    for label, coeff in f.terms:
        term = SymFunc.one(cap)
        for r in label:
            if r not in inner:
                inner[r] = _substitute(g, r, cap)
            term = multiply(term, inner[r])
            if not term:
                break
        result = result + term * coeff
    return result


@lru_cache(maxsize=None)
def complete(n: int) -> SymFunc:
    """h_n = Σ_{μ⊢n} p_μ / z_μ (the trivial representation)."""
    return SymFunc.from_terms({mu: Fraction(1, z_lambda(mu)) for mu in enumerate_partitions(n)})


@lru_cache(maxsize=None)
def elementary(n: int) -> SymFunc:
    """e_n (the sign representation)."""
    return SymFunc.from_terms(
        {mu: Fraction((-1) ** (n - len(mu)), z_lambda(mu)) for mu in enumerate_partitions(n)}
    )


def omega(f: SymFunc) -> SymFunc:
    """The involution p_μ ↦ (-1)^{|μ|-ℓ(μ)} p_μ (tensoring with the sign)."""
    return SymFunc.from_terms(
        {lab: c if (weight(lab) - len(lab)) % 2 == 0 else -c for lab, c in f.terms}, f.cap
    )


@lru_cache(maxsize=None)
def lie_character(j: int) -> SymFunc:
    """ℓ_j = (1/j) Σ_{d|j} μ(d) p_d^{j/d}."""
    if j < 1:
        raise ValueError(f'Lie characters start at degree 1, got {j}')
    terms = {}
    for d in divisors(j):
        sign = int(mobius(d))
        if sign:
            terms[(d,) * (j // d)] = Fraction(sign, j)
    return SymFunc.from_terms(terms)


def from_rep(rep: RepDecomposition, store=None) -> SymFunc:
    """Frobenius characteristic Σ mult(λ) s_λ, with s_λ = Σ_μ χ_λ(μ)/z_μ p_μ."""
    if not rep:
        return SymFunc()
    table = character_table(rep.n, store)
    terms = {}
    for lam, mult in rep.terms:
        for mu, value in table.row(lam).items():
            if value:
                terms[mu] = terms.get(mu, Fraction(0)) + Fraction(mult * value, z_lambda(mu))
    return SymFunc.from_terms(terms)


def to_character(f: SymFunc, n: int | None = None) -> CharacterVector:
    """χ(μ) = z_μ·[p_μ]f for a homogeneous f of degree n."""
    n = f.degree if n is None else n
    if n is None:
        raise ValueError('to_character needs a homogeneous symmetric function or an explicit degree')
    values = {}
    for mu, coeff in f.terms:
        if weight(mu) != n:
            raise WeightMismatchError(weight(mu), n)
        value = coeff * z_lambda(mu)
        if value.denominator != 1:
            raise VirtualCharacterError(mu, value, message='non-integral class function value')
        values[mu] = int(value)
    return CharacterVector.from_mapping(n, values)


def to_rep(f: SymFunc, n: int | None = None, store=None) -> RepDecomposition:
    """Schur expansion via ⟨f, s_λ⟩ = Σ_μ [p_μ]f · χ_λ(μ)."""
    n = f.degree if n is None else n
    if n is None:
        raise ValueError('to_rep needs a homogeneous symmetric function or an explicit degree')
    coefficients = f.coefficients
    for mu in coefficients:
        if weight(mu) != n:
            raise WeightMismatchError(weight(mu), n)
    mults = {}
    for lam, row in character_table(n, store):
        mult = sum((coefficients.get(mu, 0) * value for mu, value in row.items()), Fraction(0))
        if mult.denominator != 1 or mult < 0:
            raise VirtualCharacterError(lam, mult, message='not a genuine character')
        if mult:
            mults[lam] = int(mult)
    return RepDecomposition.from_mults(n, mults)
