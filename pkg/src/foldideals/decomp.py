"""Linear primes, primary components and degreewise checks of fold-ideal decompositions.

Primes are spans of support forms and are compared by their canonical RREF
span, never by index set: different index sets can give the same prime.
The stored set of primes is always filtered to those containing ``I_a``,
i.e. with ``nu >= N - a + 1``.

When the forms do not span all linear forms (``rk < n + 1``) the formulas
are applied in the ambient ring as they stand: the prime spanned by all
forms then plays the role of the irrelevant ideal, and no ``M`` component
appears.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .graded import (
    GeneratorSet,
    GradedPiece,
    dim_R,
    full_piece,
    linear_poly,
    mult_map,
    span_in_degree,
    zero_piece,
)
from .fold import fold_generators, ideal_power
from .linalg import ExactMatrix, RowSpace, annihilator, intersect_all, kernel, rref
from .linalg import _vstack_many
from .sigma import FormCollection, NonGenericSupportError, is_generic_support

__all__ = [
    "LinearPrime",
    "PrimaryComponent",
    "Decomposition",
    "prime_from_indices",
    "closure_nu",
    "gamma_set",
    "lemma21_components",
    "cor24_decomposition",
    "saturation_components",
    "component_piece",
    "prime_power_piece",
    "saturation_pieces",
    "verify_lemma21",
    "verify_prop22",
    "verify_cor24",
    "ass_primes",
    "component_irredundancy",
    "min_codim",
]


@dataclass(frozen=True)
class LinearPrime:
    """A prime generated by support forms; equality is equality of spans."""

    support_indices: tuple = dc_field(compare=False)
    span: RowSpace = dc_field(repr=False)

    @property
    def codim(self) -> int:
        return self.span.dim

    @property
    def num_vars(self) -> int:
        return self.span.ambient_dim

    @property
    def is_maximal(self) -> bool:
        return self.codim == self.num_vars

    def generators(self) -> list:
        field = self.span.field
        return [linear_poly(r, field) for r in self.span.basis.rows]

    def contains_form(self, coeffs: Sequence) -> bool:
        return self.span.contains(coeffs)

    def __hash__(self):
        return hash(self.span)


@dataclass(frozen=True)
class PrimaryComponent:
    prime: LinearPrime
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("components with exponent <= 0 are dropped, not stored")


@dataclass(frozen=True)
class Decomposition:
    """An intersection of powers of linear primes, sorted by (codim, indices)."""

    components: tuple
    num_vars: int
    field: object

    @property
    def includes_M(self) -> bool:
        return any(c.prime.is_maximal for c in self.components)

    def without_maximal(self) -> "Decomposition":
        return Decomposition(tuple(c for c in self.components if not c.prime.is_maximal),
                             self.num_vars, self.field)

    def drop(self, i: int) -> "Decomposition":
        return Decomposition(self.components[:i] + self.components[i + 1:], self.num_vars, self.field)

    def as_set(self) -> set:
        return {(c.prime.span.basis, c.exponent) for c in self.components}

    def describe(self) -> list:
        return [{"support_indices": list(c.prime.support_indices),
                 "codim": c.prime.codim,
                 "exponent": c.exponent,
                 "maximal": c.prime.is_maximal}
                for c in self.components]


def _span_of(sigma: FormCollection, idx: Sequence[int]) -> RowSpace:
    return rref(ExactMatrix([list(sigma.forms[i].coeffs) for i in idx], sigma.field))[0]


def _closure_indices(sigma: FormCollection, span: RowSpace) -> tuple:
    return tuple(i for i, f in enumerate(sigma.forms) if span.contains(f.coeffs))


def prime_from_indices(sigma: FormCollection, idx: Sequence[int]) -> LinearPrime:
    span = _span_of(sigma, idx)
    return LinearPrime(_closure_indices(sigma, span), span)


def closure_nu(sigma: FormCollection, prime: LinearPrime) -> tuple[list, int]:
    """Members of the collection inside ``prime`` as ``(index, multiplicity)``, and their total."""
    cl = [(i, sigma.multiplicities[i]) for i, f in enumerate(sigma.forms) if prime.contains_form(f.coeffs)]
    return cl, sum(m for _, m in cl)


@lru_cache(maxsize=256)
def _all_support_primes(sigma: FormCollection) -> tuple:
    seen: dict = {}
    for size in range(1, sigma.s + 1):
        for S in combinations(range(sigma.s), size):
            span = _span_of(sigma, S)
            if span not in seen:
                seen[span] = LinearPrime(_closure_indices(sigma, span), span)
    return tuple(seen.values())


def _sort_components(comps) -> tuple:
    return tuple(sorted(comps, key=lambda c: (c.prime.codim, c.prime.support_indices)))


def gamma_set(sigma: FormCollection, a: int) -> list:
    """Distinct primes spanned by support forms that contain ``I_a``."""
    N = sigma.N
    if not 1 <= a <= N:
        raise ValueError(f"need 1 <= a <= N = {N}")
    out = []
    for p in _all_support_primes(sigma):
        if closure_nu(sigma, p)[1] >= N - a + 1:
            out.append(p)
    return sorted(out, key=lambda p: (p.codim, p.support_indices))


def _nu_decomposition(sigma: FormCollection, a: int) -> Decomposition:
    N = sigma.N
    comps = [PrimaryComponent(p, a - N + closure_nu(sigma, p)[1]) for p in gamma_set(sigma, a)]
    return Decomposition(_sort_components(comps), sigma.num_vars, sigma.field)


def lemma21_components(sigma: FormCollection, a: int) -> Decomposition:
    """Components ``<l_S>^{mu(S)}`` over all index sets, ``mu(S) = a - sum_{j not in S} m_j``.

    Non-positive exponents are dropped; a prime reached from several index
    sets keeps its largest exponent.  No genericity is assumed.
    """
    best: dict = {}
    total = sigma.N
    for size in range(1, sigma.s + 1):
        for S in combinations(range(sigma.s), size):
            mu = a - (total - sum(sigma.multiplicities[i] for i in S))
            if mu < 1:
                continue
            span = _span_of(sigma, S)
            if span not in best or best[span][1] < mu:
                best[span] = (LinearPrime(_closure_indices(sigma, span), span), mu)
    comps = [PrimaryComponent(p, e) for p, e in best.values()]
    return Decomposition(_sort_components(comps), sigma.num_vars, sigma.field)


def _require_generic(sigma: FormCollection, what: str):
    if not is_generic_support(sigma):
        raise NonGenericSupportError(f"{what} needs generic support")


def cor24_decomposition(sigma: FormCollection, a: int) -> Decomposition:
    """``I_a = intersection over Gamma of p^{a - N + nu(p)}`` (generic support)."""
    _require_generic(sigma, "the primary decomposition")
    return _nu_decomposition(sigma, a)


def saturation_components(sigma: FormCollection, a: int) -> Decomposition:
    """The decomposition above with the ``M`` component removed."""
    return cor24_decomposition(sigma, a).without_maximal()


def _prime_power_gens(prime: LinearPrime, e: int) -> GeneratorSet:
    base = GeneratorSet(prime.generators(), prime.num_vars, prime.span.field)
    return ideal_power(base, e)


@lru_cache(maxsize=2048)
def prime_power_piece(prime: LinearPrime, e: int, d: int) -> GradedPiece:
    """Degree-``d`` piece of ``prime^e``."""
    nv, field = prime.num_vars, prime.span.field
    if d < e:
        return zero_piece(nv, d, field)
    if prime.is_maximal:
        return full_piece(nv, d, field)
    return span_in_degree(_prime_power_gens(prime, e), d)


def component_piece(decomp: Decomposition, d: int) -> GradedPiece:
    """Degree-``d`` piece of the intersection of all components."""
    nv, field = decomp.num_vars, decomp.field
    spaces = [prime_power_piece(c.prime, c.exponent, d).space for c in decomp.components]
    return GradedPiece(nv, d, intersect_all(spaces, field, dim_R(nv - 1, d)))


def _colon_by_max(gens_num_vars: int, field, d: int, upper: RowSpace) -> RowSpace:
    # {f in R_d : x_i f in upper for all i}
    n = gens_num_vars - 1
    if upper.dim == upper.ambient_dim:
        return RowSpace(ExactMatrix.identity(field, dim_R(n, d)), tuple(range(dim_R(n, d))))
    ann = annihilator(upper).basis
    blocks = []
    for i in range(gens_num_vars):
        e = [0] * gens_num_vars
        e[i] = 1
        blocks.append(ann @ mult_map({tuple(e): 1}, d, gens_num_vars, field))
    return kernel(_vstack_many(field, dim_R(n, d), blocks))


def saturation_pieces(gens: GeneratorSet, D: int, max_steps: int | None = None) -> tuple[dict, int]:
    """Pieces of ``I^sat`` in degrees ``<= D`` via iterated colons by ``M``.

    ``(I : M^{k+1})_d`` is computed from ``(I : M^k)_{d+1}``; iteration stops
    at the first ``k`` where ``(I : M^k)_d = (I : M^{k+1})_d`` for every
    ``d <= D``.  Returns the pieces and that ``k``.
    """
    nv, field = gens.num_vars, gens.field
    if max_steps is None:
        max_steps = D + gens.max_degree() + nv + 2
    memo: dict = {}

    def colon(k: int, d: int) -> RowSpace:
        if (k, d) in memo:
            return memo[k, d]
        if k == 0:
            out = span_in_degree(gens, d).space
        else:
            out = _colon_by_max(nv, field, d, colon(k - 1, d + 1))
        memo[k, d] = out
        return out

    for k in range(max_steps + 1):
        if all(colon(k, d) == colon(k + 1, d) for d in range(D + 1)):
            return {d: GradedPiece(nv, d, colon(k, d)) for d in range(D + 1)}, k
    raise RuntimeError(f"saturation did not stabilize within {max_steps} colon steps")


def _check_bound(a: int, D: int):
    if D < a:
        raise ValueError(f"degree bound {D} is below the generator degree {a}")


def verify_lemma21(sigma: FormCollection, a: int, D: int) -> bool:
    """``I_a`` lies in every ``<l_S>^{mu(S)}``, degreewise up to ``D``; any collection."""
    _check_bound(a, D)
    I = fold_generators(sigma, a).generator_set
    comps = lemma21_components(sigma, a)
    return all(span_in_degree(I, d) <= component_piece(comps, d) for d in range(D + 1))


def verify_prop22(sigma: FormCollection, a: int, D: int, check_hypothesis: bool = True) -> bool:
    """Saturation oracle equals the intersection of the non-maximal components, up to ``D``."""
    _check_bound(a, D)
    if check_hypothesis:
        _require_generic(sigma, "the saturation formula")
    I = fold_generators(sigma, a).generator_set
    sat, _ = saturation_pieces(I, D)
    target = _nu_decomposition(sigma, a).without_maximal()
    return all(sat[d].space == component_piece(target, d).space for d in range(D + 1))


def verify_cor24(sigma: FormCollection, a: int, D: int, check_hypothesis: bool = True) -> bool:
    """``piece(I_a, d)`` equals the component intersection for every ``d <= D``."""
    _check_bound(a, D)
    if check_hypothesis:
        _require_generic(sigma, "the primary decomposition")
    I = fold_generators(sigma, a).generator_set
    decomp = _nu_decomposition(sigma, a)
    return all(span_in_degree(I, d).space == component_piece(decomp, d).space for d in range(D + 1))


def ass_primes(sigma: FormCollection, a: int) -> list:
    """The associated primes of ``I_a`` (generic support): the set Gamma."""
    _require_generic(sigma, "the associated-prime statement")
    return gamma_set(sigma, a)


def component_irredundancy(decomp: Decomposition, D: int) -> list:
    """For each component, whether dropping it enlarges some piece of degree ``<= D``."""
    out = []
    for i in range(len(decomp.components)):
        rest = decomp.drop(i)
        out.append(any(component_piece(rest, d).dim > component_piece(decomp, d).dim
                       for d in range(D + 1)))
    return out


def min_codim(decomp: Decomposition) -> int | None:
    return min((c.prime.codim for c in decomp.components), default=None)
