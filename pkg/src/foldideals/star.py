"""Star configurations, their symbolic and ordinary powers, and resurgence.

Two models are used side by side.  The *generic model* is an arrangement of
``s`` generic hyperplanes in P^n, handled by degreewise linear algebra.  The
*monomial model* is the coordinate arrangement in P^{s-1}, where symbolic
and ordinary powers are monomial ideals with closed-form membership tests:

* ``t`` lies in the m-th symbolic power iff every c entries of ``t`` sum to
  at least ``m``, i.e. the ``c`` smallest entries do;
* ``t`` lies in the r-th ordinary power iff ``sum_j min(t_j, r) >= r (s-c+1)``
  (a witness ``k <= t`` with ``k_j <= r`` and ``sum k = r(s-c+1)`` exists
  exactly then; take ``k_j = min(t_j, r)`` and lower entries greedily).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .decomp import (
    Decomposition,
    PrimaryComponent,
    component_piece,
    cor24_decomposition,
    prime_from_indices,
)
from .fold import FoldIdeal, expand_product, fold_generators, ideal_power
from .graded import GradedPiece, span_in_degree
from .sigma import FormCollection, NonGenericSupportError, is_generic_support, rank_of

__all__ = [
    "StarConfig",
    "MonomialStarModel",
    "star_ideal",
    "star_power",
    "symbolic_power_piece",
    "ghm_decomposition",
    "ghm_rhs_piece",
    "verify_ghm",
    "GHMReport",
    "mono_symbolic_member",
    "mono_power_member",
    "mono_symbolic_min_gens",
    "mono_containment",
    "resurgence_formula",
    "resurgence_search",
    "ResurgenceReport",
    "phi_transfer_check",
    "PhiTransferReport",
]


@dataclass(frozen=True)
class StarConfig:
    """A generic arrangement of ``s >= n+1`` hyperplanes and a codimension ``1 <= c <= n``."""

    arrangement: FormCollection
    c: int

    def __post_init__(self):
        A = self.arrangement
        if any(m != 1 for m in A.multiplicities):
            raise ValueError("a star configuration needs multiplicity-one hyperplanes")
        if A.s < A.num_vars:
            raise ValueError(f"need s >= n+1 = {A.num_vars} hyperplanes, got {A.s}")
        if not 1 <= self.c <= A.n:
            raise ValueError(f"codimension must satisfy 1 <= c <= n = {A.n}")
        if rank_of(A) != A.num_vars or not is_generic_support(A):
            raise NonGenericSupportError("hyperplanes do not meet properly")

    @property
    def s(self) -> int:
        return self.arrangement.s

    @property
    def n(self) -> int:
        return self.arrangement.n

    @property
    def fold(self) -> int:
        """Generator degree ``s - c + 1`` of the star ideal."""
        return self.s - self.c + 1


def star_ideal(A: StarConfig) -> FoldIdeal:
    """``I(V_c) = I_{s-c+1}(l_1 ... l_s)``."""
    return fold_generators(A.arrangement, A.fold)


def star_power(A: StarConfig, m: int) -> FoldIdeal:
    """``I(V_c)^m`` as ``I_{m(s-c+1)}(l_1^m ... l_s^m)``."""
    return fold_generators(A.arrangement.scaled(m), m * A.fold)


def _codim_decomposition(A: StarConfig, pairs: Sequence[tuple[int, int]]) -> Decomposition:
    # pairs: (j, exponent) meaning all j-subsets of hyperplanes raised to exponent
    comps = []
    for j, e in pairs:
        for S in combinations(range(A.s), j):
            comps.append(PrimaryComponent(prime_from_indices(A.arrangement, S), e))
    return Decomposition(tuple(comps), A.arrangement.num_vars, A.arrangement.field)


def symbolic_decomposition(A: StarConfig, m: int, c: int | None = None) -> Decomposition:
    return _codim_decomposition(A, [(A.c if c is None else c, m)])


def symbolic_power_piece(A: StarConfig, m: int, d: int) -> GradedPiece:
    """Degree-``d`` piece of ``I^{(m)}``: the intersection of all ``<l_J>^m``, ``|J| = c``."""
    return component_piece(symbolic_decomposition(A, m), d)


def ghm_decomposition(A: StarConfig, m: int) -> Decomposition:
    """Components of ``I^{(m)} ∩ I(V_{c+1})^{(2m)} ∩ ... ∩ I(V_n)^{((n-c+1)m)} ∩ M^{(s-c+1)m}``."""
    pairs = [(j, (j - A.c + 1) * m) for j in range(A.c, A.n + 1)]
    pairs.append((A.n + 1, A.fold * m))
    return _codim_decomposition(A, pairs)


def ghm_rhs_piece(A: StarConfig, m: int, d: int) -> GradedPiece:
    return component_piece(ghm_decomposition(A, m), d)


def _dedup(decomp: Decomposition) -> set:
    # duplicate spans (e.g. every (n+1)-subset spans M) collapse to one component
    return decomp.as_set()


@dataclass
class GHMReport:
    c: int
    m: int
    D: int
    ordinary_equals_rhs: dict = dc_field(default_factory=dict)
    star_equals_intersection: dict = dc_field(default_factory=dict)
    matches_saturation_formula: bool = False
    dims: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (all(self.ordinary_equals_rhs.values()) and all(self.star_equals_intersection.values())
                and self.matches_saturation_formula)


def verify_ghm(A: StarConfig, m: int, D: int, report: bool = False):
    """Degreewise check of ``I^m`` against the GHM intersection for all ``d <= D``.

    ``I^m`` is built as the ideal power of the star-ideal generators.  Also
    checked: the star ideal equals the intersection of its codimension-c
    primes in the same degrees, and the GHM components coincide with the
    primary decomposition of ``I_{m(s-c+1)}(l^m)``.
    """
    lo = A.fold * m
    if D < lo:
        raise ValueError(f"degree bound {D} is below the generator degree {lo} of I^m")
    base = star_ideal(A).generator_set
    power = ideal_power(base, m)
    rhs = ghm_decomposition(A, m)
    sym1 = symbolic_decomposition(A, 1)
    rep = GHMReport(A.c, m, D)
    for d in range(D + 1):
        lhs = span_in_degree(power, d)
        r = component_piece(rhs, d)
        rep.ordinary_equals_rhs[d] = lhs.space == r.space
        rep.star_equals_intersection[d] = span_in_degree(base, d).space == component_piece(sym1, d).space
        rep.dims[d] = (lhs.dim, r.dim)
    rep.matches_saturation_formula = (
        _dedup(rhs) == cor24_decomposition(A.arrangement.scaled(m), lo).as_set()
    )
    return rep if report else rep.ok


# ---------------------------------------------------------------------------
# monomial model


@dataclass(frozen=True)
class MonomialStarModel:
    """Coordinate hyperplanes ``z_0 .. z_{s-1}`` in P^{s-1}, codimension ``c``."""

    s: int
    c: int

    def __post_init__(self):
        if self.s < 2 or not 1 <= self.c <= self.s - 1:
            raise ValueError("need s >= 2 and 1 <= c <= s - 1")

    @property
    def fold(self) -> int:
        return self.s - self.c + 1


def _check_t(model: MonomialStarModel, t: Sequence[int]):
    if len(t) != model.s or any(x < 0 for x in t):
        raise ValueError(f"exponent vector must have {model.s} non-negative entries")


def mono_symbolic_member(model: MonomialStarModel, t: Sequence[int], m: int) -> bool:
    _check_t(model, t)
    return sum(sorted(t)[: model.c]) >= m


def mono_power_member(model: MonomialStarModel, t: Sequence[int], r: int) -> bool:
    if r < 1:
        raise ValueError("r must be at least 1")
    _check_t(model, t)
    return sum(min(x, r) for x in t) >= r * model.fold


def mono_symbolic_min_gens(model: MonomialStarModel, m: int) -> list:
    """Minimal monomial generators of ``I'^{(m)}``.

    Capping every exponent at ``m`` keeps a member a member (a capped entry
    among the c smallest already brings their sum to ``m``), so minimal
    generators live in ``[0, m]^s``.  Membership is upward closed, hence a
    member is minimal iff lowering any single positive entry leaves the ideal.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    out = []
    for t in product(range(m + 1), repeat=model.s):
        if not mono_symbolic_member(model, t, m):
            continue
        minimal = True
        for j, x in enumerate(t):
            if x and mono_symbolic_member(model, t[:j] + (x - 1,) + t[j + 1:], m):
                minimal = False
                break
        if minimal:
            out.append(t)
    out.sort(key=lambda t: (sum(t), tuple(-x for x in t)))
    return out


def mono_containment(model: MonomialStarModel, m: int, r: int) -> bool:
    """``I'^{(m)} ⊆ I'^r``."""
    return all(mono_power_member(model, t, r) for t in mono_symbolic_min_gens(model, m))


def _containment_witness(model: MonomialStarModel, m: int, r: int):
    for t in mono_symbolic_min_gens(model, m):
        if not mono_power_member(model, t, r):
            return t
    return None


def resurgence_formula(s: int, c: int) -> Fraction:
    if not 1 <= c <= s - 1:
        raise ValueError("need 1 <= c <= s - 1")
    return Fraction(c * (s - c + 1), s)


@dataclass
class ResurgenceReport:
    s: int
    c: int
    m_max: int
    r_max: int
    formula: Fraction
    table: dict
    witnesses: dict
    max_failing_ratio: Fraction | None
    closest_failures: list
    no_failure_at_or_above_formula: bool
    failure_within_gap: bool
    all_failures_below_crude_bound: bool

    @property
    def ok(self) -> bool:
        return (self.no_failure_at_or_above_formula and self.failure_within_gap
                and self.all_failures_below_crude_bound)

    @property
    def interval(self) -> tuple:
        """The resurgence lies in ``[max failing ratio, formula]`` as far as the table shows."""
        return (self.max_failing_ratio, self.formula)


def resurgence_search(model: MonomialStarModel, m_max: int, r_max: int) -> ResurgenceReport:
    """Containment table of ``I'^{(m)} ⊆ I'^r`` for ``m <= m_max``, ``r <= r_max``."""
    if m_max < 1 or r_max < 1:
        raise ValueError("bounds must be at least 1")
    rho = resurgence_formula(model.s, model.c)
    gens = {m: mono_symbolic_min_gens(model, m) for m in range(1, m_max + 1)}
    table, witnesses = {}, {}
    for m in range(1, m_max + 1):
        for r in range(1, r_max + 1):
            bad = next((t for t in gens[m] if not mono_power_member(model, t, r)), None)
            table[m, r] = bad is None
            if bad is not None:
                witnesses[m, r] = bad
    failing = sorted((Fraction(m, r), m, r) for (m, r), ok in table.items() if not ok)
    top = failing[-1][0] if failing else None
    closest = [(m, r) for q, m, r in failing if q == top] if failing else []
    return ResurgenceReport(
        s=model.s, c=model.c, m_max=m_max, r_max=r_max, formula=rho,
        table=table, witnesses=witnesses, max_failing_ratio=top,
        closest_failures=closest,
        no_failure_at_or_above_formula=all(q < rho for q, _, _ in failing),
        failure_within_gap=top is not None and rho - top <= Fraction(1, r_max),
        all_failures_below_crude_bound=all(q <= model.s for q, _, _ in failing),
    )


@dataclass
class PhiTransferReport:
    m: int
    r: int
    D: int
    monomial_contained: bool
    generic_contained: bool
    certified: bool
    witness_degree: int | None
    phi_images_in_symbolic: bool
    skipped_generators: int

    @property
    def agree(self) -> bool:
        return self.monomial_contained == self.generic_contained

    @property
    def ok(self) -> bool:
        return self.agree and self.phi_images_in_symbolic


def phi_transfer_check(A: StarConfig, m: int, r: int, D: int, report: bool = False):
    """Compare ``I'^{(m)} ⊆ I'^r`` in the monomial model with ``I^{(m)} ⊆ I^r`` degreewise.

    The generic side is checked in every degree ``<= D``.  Containment there
    is certified when ``D`` reaches the top degree of a minimal generator of
    ``I'^{(m)}`` (whose images under ``z_i -> l_{i+1}`` generate ``I^{(m)}``);
    a failure is always certified by its witness degree.  The images of the
    monomial generators of degree ``<= D`` are also tested for membership in
    ``I^{(m)}``.
    """
    model = MonomialStarModel(A.s, A.c)
    mono = mono_containment(model, m, r)
    power = star_power(A, r).generator_set
    sym = symbolic_decomposition(A, m)
    generic = True
    witness = None
    pieces = {}
    for d in range(D + 1):
        sp = component_piece(sym, d)
        pieces[d] = sp
        if not sp <= span_in_degree(power, d):
            generic = False
            witness = d
            break
    gens = mono_symbolic_min_gens(model, m)
    top = max(sum(t) for t in gens)
    images_ok = True
    skipped = 0
    for t in gens:
        d = sum(t)
        if d > D:
            skipped += 1
            continue
        sp = pieces.get(d) or component_piece(sym, d)
        if not sp.contains_poly(expand_product(A.arrangement, t)):
            images_ok = False
    rep = PhiTransferReport(m, r, D, mono, generic, (not generic) or D >= top, witness,
                            images_ok, skipped)
    return rep if report else rep.ok
