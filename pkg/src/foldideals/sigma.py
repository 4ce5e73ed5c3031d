"""Collections of linear forms with multiplicities.

A collection lists distinct (pairwise non-proportional) linear forms
``l_1, ..., l_s`` with multiplicities ``m_1, ..., m_s``; ``N = sum m_i``.
The generator matrix of the associated linear code has one column per form,
repeated according to its multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import QQ, ExactMatrix, rref
from .graded import linear_poly

__all__ = [
    "LinearForm",
    "FormCollection",
    "CodeProfile",
    "RankDeficientError",
    "NonGenericSupportError",
    "canonicalize",
    "build_collection",
    "rank_of",
    "is_generic_support",
    "reembed",
    "generalized_hamming_weights",
    "height_profile",
    "code_profile",
]


class RankDeficientError(ValueError):
    pass


class NonGenericSupportError(ValueError):
    """A statement that needs generic support was asked of a non-generic collection."""


@dataclass(frozen=True)
class LinearForm:
    """A nonzero linear form scaled so its first nonzero coefficient is 1."""

    coeffs: tuple

    @property
    def num_vars(self) -> int:
        return len(self.coeffs)

    def poly(self, field=QQ) -> dict:
        return linear_poly(self.coeffs, field)

    def __str__(self):
        names = _var_names(len(self.coeffs))
        terms = []
        for c, x in zip(self.coeffs, names):
            if not c:
                continue
            if c == 1:
                terms.append(x)
            elif c == -1:
                terms.append("-" + x)
            else:
                terms.append(f"{c}*{x}")
        return "+".join(terms).replace("+-", "-")


def _var_names(k: int) -> list:
    if k <= 4:
        return ["x", "y", "z", "w"][:k]
    return [f"x{i}" for i in range(k)]


def canonicalize(raw: Sequence, field=QQ) -> LinearForm:
    coeffs = [field.coerce(c) for c in raw]
    lead = next((c for c in coeffs if c), None)
    if lead is None:
        raise ValueError("the zero form is not allowed")
    inv = field.inv(lead)
    return LinearForm(tuple(field.reduce(c * inv) for c in coeffs))


@dataclass(frozen=True)
class FormCollection:
    """The support forms and their multiplicities, in input order."""

    forms: tuple
    multiplicities: tuple
    field: object = QQ
    labels: tuple | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if len(self.forms) != len(self.multiplicities):
            raise ValueError("forms and multiplicities differ in length")
        if not self.forms:
            raise ValueError("empty collection")
        nv = {f.num_vars for f in self.forms}
        if len(nv) != 1:
            raise ValueError("forms live in different numbers of variables")
        if len(set(self.forms)) != len(self.forms):
            raise ValueError("support forms must be pairwise non-proportional")
        if any(int(m) < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be at least 1")

    @property
    def num_vars(self) -> int:
        return self.forms[0].num_vars

    @property
    def n(self) -> int:
        return self.num_vars - 1

    @property
    def s(self) -> int:
        return len(self.forms)

    @property
    def N(self) -> int:
        return sum(self.multiplicities)

    def entries(self):
        return list(zip(self.forms, self.multiplicities))

    def coefficient_rows(self) -> list:
        return [list(f.coeffs) for f in self.forms]

    def with_multiplicities(self, mults: Sequence[int]) -> "FormCollection":
        """Same support with new multiplicities; zero entries are dropped."""
        keep = [(f, m) for f, m in zip(self.forms, mults) if m > 0]
        return FormCollection(tuple(f for f, _ in keep), tuple(m for _, m in keep), self.field)

    def scaled(self, m: int) -> "FormCollection":
        """Every multiplicity multiplied by ``m``."""
        return self.with_multiplicities([k * m for k in self.multiplicities])

    def remove_one(self, i: int) -> "FormCollection | None":
        """Drop one copy of the ``i``-th support form (``None`` if nothing is left)."""
        mults = list(self.multiplicities)
        mults[i] -= 1
        if not any(mults):
            return None
        return self.with_multiplicities(mults)

    def describe(self) -> list:
        return [{"form": [str(c) for c in f.coeffs], "multiplicity": m}
                for f, m in zip(self.forms, self.multiplicities)]


def build_collection(items: Iterable, field=QQ, labels: Sequence | None = None) -> FormCollection:
    """Canonicalize ``(coeffs, multiplicity)`` pairs and merge proportional forms."""
    order: list = []
    mult: dict = {}
    for raw, m in items:
        if int(m) < 1:
            raise ValueError("multiplicity must be at least 1")
        f = canonicalize(raw, field)
        if f not in mult:
            order.append(f)
            mult[f] = 0
        mult[f] += int(m)
    labs = tuple(labels) if labels is not None and len(labels) == len(order) else None
    return FormCollection(tuple(order), tuple(mult[f] for f in order), field, labs)


def _rank(rows: Sequence, field) -> int:
    if not rows:
        return 0
    return rref(ExactMatrix(rows, field))[1]


def rank_of(sigma: FormCollection) -> int:
    """Rank of the coefficient matrix of the support, i.e. ht of the ideal of all forms."""
    return _rank(sigma.coefficient_rows(), sigma.field)


def is_generic_support(sigma: FormCollection) -> bool:
    """Every ``min(rk, s)`` support forms are linearly independent."""
    k = min(rank_of(sigma), sigma.s)
    rows = sigma.coefficient_rows()
    return all(_rank([rows[i] for i in S], sigma.field) == k
               for S in combinations(range(sigma.s), k))


def reembed(sigma: FormCollection) -> tuple[FormCollection, tuple]:
    """Rewrite the forms in ``rk`` variables.

    The forms span a row space whose RREF basis has pivot columns ``P``; a
    form equals ``sum_k l[P_k] * b_k``, so the coordinates ``l[P]`` give a
    rank-preserving change of variables onto ``K[y_1..y_rk]``.  Returns the
    new collection and the pivot columns used.
    """
    space, _ = rref(ExactMatrix(sigma.coefficient_rows(), sigma.field))
    piv = space.pivots
    forms = [canonicalize([f.coeffs[p] for p in piv], sigma.field) for f in sigma.forms]
    return FormCollection(tuple(forms), sigma.multiplicities, sigma.field), tuple(piv)


def _subset_profile(sigma: FormCollection) -> dict:
    """Max total multiplicity of support subsets, per rank."""
    rows = sigma.coefficient_rows()
    best: dict = {0: 0}
    for size in range(1, sigma.s + 1):
        for S in combinations(range(sigma.s), size):
            r = _rank([rows[i] for i in S], sigma.field)
            w = sum(sigma.multiplicities[i] for i in S)
            if w > best.get(r, -1):
                best[r] = w
    return best


def generalized_hamming_weights(sigma: FormCollection, allow_reembed: bool = False) -> list:
    """``d_1 < ... < d_k`` with ``N - d_r`` the largest column count of rank ``<= k - r``."""
    k = rank_of(sigma)
    if k != sigma.num_vars:
        if not allow_reembed:
            raise RankDeficientError(
                f"rank {k} < {sigma.num_vars} variables; re-embed the collection first")
        sigma, _ = reembed(sigma)
    best = _subset_profile(sigma)
    N = sigma.N
    out = []
    for r in range(1, k + 1):
        cap = k - r
        out.append(N - max(w for rk, w in best.items() if rk <= cap))
    return out


def height_profile(sigma: FormCollection, weights: Sequence[int] | None = None) -> dict:
    """``a -> ht(I_a)`` for ``a = 1..N`` from the generalized Hamming weights.

    With ``k = rk``, ``ht = k + 1 - r`` whenever ``d_{r-1} < a <= d_r``.
    """
    k = rank_of(sigma)
    if weights is None:
        weights = generalized_hamming_weights(sigma, allow_reembed=True)
    bounds = [0] + list(weights)
    out = {}
    for a in range(1, sigma.N + 1):
        r = next(r for r in range(1, k + 1) if bounds[r - 1] < a <= bounds[r])
        out[a] = k + 1 - r
    return out


@dataclass(frozen=True)
class CodeProfile:
    generator_matrix: ExactMatrix
    weights: tuple
    height_profile: dict
    projection: tuple | None = None


def code_profile(sigma: FormCollection) -> CodeProfile:
    """Generator matrix, generalized Hamming weights and height profile."""
    cols = [f.coeffs for f, m in sigma.entries() for _ in range(m)]
    G = ExactMatrix([list(r) for r in zip(*cols)], sigma.field)
    projection = None
    if rank_of(sigma) != sigma.num_vars:
        _, projection = reembed(sigma)
    w = generalized_hamming_weights(sigma, allow_reembed=True)
    return CodeProfile(G, tuple(w), height_profile(sigma, w), projection)
