"""Graded pieces of R = K[x_0, ..., x_n].

A homogeneous ideal is never represented globally here; instead each degree
``d`` slice is a :class:`GradedPiece`, a row space inside the monomial basis
of ``R_d``.  Monomials of a fixed degree are listed in graded reverse
lexicographic order, largest first, and that order is used everywhere.

Polynomials are sparse ``dict`` maps from exponent tuples to field scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .linalg import (
    QQ,
    DimensionMismatchError,
    ExactMatrix,
    RowSpace,
    preimage,
    rref,
    subspace_leq,
    sum_all,
    zero_space,
    full_space,
)

Exponent = tuple
Poly = dict


class NotHomogeneousError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomials


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple:
    """All exponent vectors of degree ``d`` in ``n + 1`` variables, grevlex descending."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    nv = n + 1
    out = []
    for combo in combinations_with_replacement(range(nv), d):
        e = [0] * nv
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    # grevlex: the smaller exponent in the last differing variable wins
    out.sort(key=lambda e: e[::-1])
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict:
    return {e: i for i, e in enumerate(monomial_basis(n, d))}


def dim_R(n: int, d: int) -> int:
    return comb(d + n, n) if d >= 0 else 0


@lru_cache(maxsize=None)
def _shift_table(n: int, d: int) -> tuple:
    """For each variable i, the index map R_d -> R_{d+1} induced by x_i."""
    src = monomial_basis(n, d)
    idx = monomial_index(n, d + 1)
    tables = []
    for i in range(n + 1):
        tables.append(tuple(idx[e[:i] + (e[i] + 1,) + e[i + 1:]] for e in src))
    return tuple(tables)


# ---------------------------------------------------------------------------
# polynomials


def linear_poly(coeffs: Sequence, field=QQ) -> Poly:
    nv = len(coeffs)
    out = {}
    for i, c in enumerate(coeffs):
        c = field.coerce(c)
        if c:
            e = [0] * nv
            e[i] = 1
            out[tuple(e)] = c
    return out


def constant_poly(num_vars: int, value=1, field=QQ) -> Poly:
    return {(0,) * num_vars: field.coerce(value)}


def monomial_poly(exponent: Exponent, field=QQ) -> Poly:
    return {tuple(exponent): field.coerce(1)}


def poly_mul(f: Mapping, g: Mapping, field=QQ) -> Poly:
    out: dict = {}
    red = field.reduce
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: red(c) for e, c in out.items() if red(c)}


def poly_pow(f: Mapping, k: int, num_vars: int, field=QQ) -> Poly:
    out = constant_poly(num_vars, 1, field)
    for _ in range(k):
        out = poly_mul(out, f, field)
    return out


def poly_degree(f: Mapping) -> int:
    """Degree of a nonzero homogeneous polynomial."""
    degs = {sum(e) for e in f}
    if not degs:
        raise ValueError("the zero polynomial has no degree")
    if len(degs) > 1:
        raise NotHomogeneousError(f"polynomial mixes degrees {sorted(degs)}")
    return degs.pop()


def poly_to_vector(f: Mapping, n: int, d: int, field=QQ) -> list:
    idx = monomial_index(n, d)
    v = [0] * len(idx)
    for e, c in f.items():
        if sum(e) != d:
            raise NotHomogeneousError(f"term {e} is not of degree {d}")
        v[idx[e]] = field.coerce(c)
    return v


def vector_to_poly(v: Sequence, n: int, d: int) -> Poly:
    basis = monomial_basis(n, d)
    return {basis[i]: c for i, c in enumerate(v) if c}


# ---------------------------------------------------------------------------
# generator sets and pieces


class GeneratorSet:
    """Homogeneous generators of an ideal, each tagged with its degree.

    An empty set generates the zero ideal; the constant 1 generates ``R``.
    Instances are immutable and hashable, so pieces can be cached per set.
    """

    __slots__ = ("num_vars", "field", "gens", "_hash")

    def __init__(self, polys: Iterable[Mapping], num_vars: int, field=QQ):
        gens = []
        for f in polys:
            f = {tuple(e): field.coerce(c) for e, c in f.items()}
            f = {e: c for e, c in f.items() if c}
            if not f:
                raise ValueError("zero generator")
            if any(len(e) != num_vars for e in f):
                raise DimensionMismatchError(f"generator not in {num_vars} variables")
            deg = poly_degree(f)
            gens.append((tuple(sorted(f.items())), deg))
        self.num_vars = num_vars
        self.field = field
        self.gens = tuple(gens)
        self._hash = hash((num_vars, field, self.gens))

    @property
    def n(self) -> int:
        return self.num_vars - 1

    def polys(self) -> list:
        return [dict(items) for items, _ in self.gens]

    def degrees(self) -> list:
        return [deg for _, deg in self.gens]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int | None:
        return min(self.degrees(), default=None)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return (isinstance(other, GeneratorSet) and self._hash == other._hash
                and (self.num_vars, self.field, self.gens) == (other.num_vars, other.field, other.gens))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GeneratorSet({len(self.gens)} gens, degrees={sorted(set(self.degrees()))})"

    def union(self, other: "GeneratorSet") -> "GeneratorSet":
        return GeneratorSet(self.polys() + other.polys(), self.num_vars, self.field)


def maximal_ideal_power(num_vars: int, e: int, field=QQ) -> GeneratorSet:
    """Generators of ``M^e`` (all monomials of degree ``e``)."""
    return GeneratorSet([monomial_poly(m, field) for m in monomial_basis(num_vars - 1, e)],
                        num_vars, field)


@dataclass(frozen=True)
class GradedPiece:
    num_vars: int
    degree: int
    space: RowSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self):
        return self.space.field

    def __le__(self, other: "GradedPiece") -> bool:
        return subspace_leq(self.space, other.space)

    def contains_poly(self, f: Mapping) -> bool:
        return self.space.contains(poly_to_vector(f, self.num_vars - 1, self.degree, self.field))

    def basis_polys(self) -> list:
        return [vector_to_poly(r, self.num_vars - 1, self.degree) for r in self.space.basis.rows]


def piece_from_polys(polys: Iterable[Mapping], num_vars: int, d: int, field=QQ) -> GradedPiece:
    n = num_vars - 1
    rows = [poly_to_vector(f, n, d, field) for f in polys]
    ncols = dim_R(n, d)
    if not rows:
        return GradedPiece(num_vars, d, zero_space(field, ncols))
    return GradedPiece(num_vars, d, rref(ExactMatrix.from_flat(field, len(rows), ncols,
                                                              [x for r in rows for x in r]))[0])


def zero_piece(num_vars: int, d: int, field=QQ) -> GradedPiece:
    return GradedPiece(num_vars, d, zero_space(field, dim_R(num_vars - 1, d)))


def full_piece(num_vars: int, d: int, field=QQ) -> GradedPiece:
    return GradedPiece(num_vars, d, full_space(field, dim_R(num_vars - 1, d)))


def mult_map(f: Mapping, d: int, num_vars: int, field=QQ) -> ExactMatrix:
    """Matrix of ``R_d -> R_{d+e}``, ``v -> f v`` (columns indexed by the source basis)."""
    f = {tuple(k): field.coerce(c) for k, c in f.items()}
    f = {k: c for k, c in f.items() if c}
    if not f:
        raise ValueError("multiplication by the zero polynomial")
    e = poly_degree(f)
    n = num_vars - 1
    src = monomial_basis(n, d)
    tgt = monomial_index(n, d + e)
    nr, nc = len(tgt), len(src)
    flat = [0] * (nr * nc)
    for j, m in enumerate(src):
        for ef, c in f.items():
            i = tgt[tuple(a + b for a, b in zip(m, ef))]
            flat[i * nc + j] = field.reduce(flat[i * nc + j] + c)
    return ExactMatrix.from_flat(field, nr, nc, flat)


@lru_cache(maxsize=4096)
def span_in_degree(gens: GeneratorSet, d: int) -> GradedPiece:
    """Degree-``d`` piece of the ideal generated by ``gens``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    n, field = gens.n, gens.field
    tgt = monomial_index(n, d)
    ncols = len(tgt)
    rows = []
    seen = set()
    for items, deg in gens.gens:
        if deg > d:
            continue
        for m in monomial_basis(n, d - deg):
            row = [0] * ncols
            for e, c in items:
                row[tgt[tuple(a + b for a, b in zip(m, e))]] = c
            key = tuple(row)
            if key not in seen:
                seen.add(key)
                rows.append(row)
    if not rows:
        return zero_piece(gens.num_vars, d, field)
    if len(rows) >= ncols and _covers_all_monomials(rows, ncols):
        return full_piece(gens.num_vars, d, field)
    flat = [x for r in rows for x in r]
    return GradedPiece(gens.num_vars, d, rref(ExactMatrix.from_flat(field, len(rows), ncols, flat))[0])


def _covers_all_monomials(rows, ncols) -> bool:
    # cheap shortcut: every monomial appears as a single-term row
    hit = set()
    for r in rows:
        nz = [i for i, x in enumerate(r) if x]
        if len(nz) == 1:
            hit.add(nz[0])
    return len(hit) == ncols


def hilbert_fn(gens: GeneratorSet, d: int) -> int:
    """``dim I_d`` for the ideal generated by ``gens``."""
    return span_in_degree(gens, d).dim


def quotient_dim(gens: GeneratorSet, d: int) -> int:
    """``dim (R/I)_d``."""
    return dim_R(gens.n, d) - hilbert_fn(gens, d)


def shift_up(piece: GradedPiece) -> GradedPiece:
    """``R_1 * piece`` inside ``R_{d+1}``."""
    n, d, field = piece.num_vars - 1, piece.degree, piece.field
    ncols = dim_R(n, d + 1)
    if piece.dim == 0:
        return zero_piece(piece.num_vars, d + 1, field)
    flat = []
    rows = piece.space.basis.rows
    for table in _shift_table(n, d):
        for r in rows:
            new = [0] * ncols
            for j, c in enumerate(r):
                if c:
                    new[table[j]] = c
            flat.extend(new)
    m = ExactMatrix.from_flat(field, len(rows) * (n + 1), ncols, flat)
    return GradedPiece(piece.num_vars, d + 1, rref(m)[0])


def colon_piece(gens: GeneratorSet, ell: Mapping | Sequence, d: int) -> GradedPiece:
    """Degree-``d`` piece of ``(I : ell)`` for a linear form ``ell``."""
    field = gens.field
    if not isinstance(ell, Mapping):
        ell = linear_poly(ell, field)
    ell = {k: c for k, c in ell.items() if field.coerce(c)}
    if not ell or poly_degree(ell) != 1:
        raise ValueError("colon_piece needs a nonzero linear form")
    target = span_in_degree(gens, d + 1)
    return GradedPiece(gens.num_vars, d, preimage(mult_map(ell, d, gens.num_vars, field), target.space))


def min_gen_degrees(gens: GeneratorSet, D: int) -> dict:
    """Number of minimal generators in each degree ``d <= D`` (zero counts omitted)."""
    if D < gens.max_degree():
        raise ValueError(f"bound {D} is below the largest generator degree {gens.max_degree()}")
    counts = {}
    prev = None
    for d in range(D + 1):
        cur = span_in_degree(gens, d)
        below = shift_up(prev).dim if prev is not None else 0
        k = cur.dim - below
        if k:
            counts[d] = k
        prev = cur
    return counts


def is_equigenerated(counts: Mapping) -> bool:
    return len([d for d, k in counts.items() if k]) <= 1


def pieces_equal(a: GeneratorSet, b: GeneratorSet, D: int) -> bool:
    """Degreewise equality of two ideals for all degrees ``<= D``."""
    return all(span_in_degree(a, d).space == span_in_degree(b, d).space for d in range(D + 1))


def default_degree_bound(*gensets: GeneratorSet, extra: int = 2) -> int:
    """Largest generator degree of all inputs, plus ``n + extra``."""
    top = max((g.max_degree() for g in gensets), default=0)
    return top + gensets[0].n + extra


def sum_of_pieces(pieces: Sequence[GradedPiece], num_vars: int, d: int, field=QQ) -> GradedPiece:
    return GradedPiece(num_vars, d, sum_all([p.space for p in pieces], field, dim_R(num_vars - 1, d)))
