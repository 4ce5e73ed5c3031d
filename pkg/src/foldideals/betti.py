"""Graded Betti numbers of R/I, regularity and the linear-resolution verdict.

``beta_{i,j}(R/I)`` is read off the Koszul complex on the variables,
``K_{i,j} = Λ^i V ⊗ (R/I)_{j-i}``, where each quotient slice is spanned by
the non-pivot (standard) monomials of the RREF basis of ``I_{j-i}``.  For
squarefree monomial ideals an independent route through Hochster's formula
(reduced homology of induced subcomplexes) is provided.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb

from .decomp import saturation_pieces
from .graded import (
    GeneratorSet,
    dim_R,
    is_equigenerated,
    min_gen_degrees,
    monomial_basis,
    monomial_index,
    span_in_degree,
)
from .linalg import ExactMatrix, rref

__all__ = [
    "BettiTable",
    "ResolutionVerdict",
    "NotEquigeneratedError",
    "UncertifiedTableError",
    "koszul_tor_dims",
    "hochster_oracle",
    "regularity",
    "is_linear_resolution",
]


class NotEquigeneratedError(ValueError):
    pass


class UncertifiedTableError(ValueError):
    pass


@dataclass(frozen=True)
class BettiTable:
    """``beta_{i,j}(R/I)`` for ``i <= i_max`` and ``j <= D`` (zeros omitted)."""

    entries: dict
    num_vars: int
    i_max: int
    D: int
    euler_ok: bool = True

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def nonzero(self) -> list:
        return sorted((i, j, b) for (i, j), b in self.entries.items() if b)

    @property
    def certified(self) -> bool:
        """Full Koszul length and a top degree strictly above every nonzero entry."""
        top = max((j for (_, j), b in self.entries.items() if b), default=0)
        return self.i_max >= self.num_vars and self.D > top

    def layout(self) -> list:
        """Macaulay-style grid: row ``k`` holds ``beta_{i, i+k}`` for ``i = 0..i_max``."""
        nz = self.nonzero()
        kmax = max((j - i for i, j, _ in nz), default=0)
        return [[self[i, i + k] for i in range(self.i_max + 1)] for k in range(kmax + 1)]

    def __str__(self):
        rows = self.layout()
        width = max([len(str(x)) for r in rows for x in r] + [1])
        head = "      " + " ".join(str(i).rjust(width) for i in range(self.i_max + 1))
        lines = [head]
        for k, r in enumerate(rows):
            lines.append(f"{k:>4}: " + " ".join(("." if x == 0 else str(x)).rjust(width) for x in r))
        return "\n".join(lines)


@dataclass(frozen=True)
class ResolutionVerdict:
    generated_degree: int
    regularity: int
    is_linear: bool
    certified_range: tuple
    saturation_consistent: bool
    table: BettiTable = dc_field(repr=False)


# ---------------------------------------------------------------------------
# Koszul route


class _Quotient:
    """Standard-monomial basis of ``(R/I)_d`` and normal forms of monomials."""

    def __init__(self, gens: GeneratorSet, d: int):
        n = gens.n
        self.degree = d
        if d < 0:
            self.dim = 0
            self.pos = {}
            self.nf = {}
            return
        space = span_in_degree(gens, d).space
        pivots = space.pivots
        piv = set(pivots)
        ncols = dim_R(n, d)
        self.pos = {}
        for c in range(ncols):
            if c not in piv:
                self.pos[c] = len(self.pos)
        self.dim = len(self.pos)
        self.nf = {}
        rows = space.basis.rows if space.dim else ()
        for r, p in zip(rows, pivots):
            self.nf[p] = {self.pos[c]: -x for c, x in enumerate(r) if x and c in self.pos}

    def normal_form(self, col: int) -> dict:
        if col in self.pos:
            return {self.pos[col]: 1}
        return self.nf[col]


def _koszul_rank(gens: GeneratorSet, quots: dict, i: int, j: int) -> int:
    """Rank of ``K_{i,j} -> K_{i-1,j}``."""
    nv = gens.num_vars
    n = nv - 1
    if i < 1 or i > nv:
        return 0
    src_q, tgt_q = quots[j - i], quots[j - i + 1]
    if src_q.dim == 0 or tgt_q.dim == 0:
        return 0
    subsets_src = list(combinations(range(nv), i))
    subsets_tgt = {S: k for k, S in enumerate(combinations(range(nv), i - 1))}
    src_basis = monomial_basis(n, j - i) if j - i >= 0 else ()
    tgt_index = monomial_index(n, j - i + 1)
    src_std = [c for c in sorted(src_q.pos, key=src_q.pos.get)]
    ncols = len(subsets_tgt) * tgt_q.dim
    flat = []
    nrows = 0
    for S in subsets_src:
        for c in src_std:
            mono = src_basis[c]
            row = [0] * ncols
            for pos, k in enumerate(S):
                sign = -1 if pos % 2 else 1
                T = S[:pos] + S[pos + 1:]
                shifted = mono[:k] + (mono[k] + 1,) + mono[k + 1:]
                base = subsets_tgt[T] * tgt_q.dim
                for qpos, coef in tgt_q.normal_form(tgt_index[shifted]).items():
                    row[base + qpos] += sign * coef
            flat.extend(gens.field.reduce(x) for x in row)
            nrows += 1
    return rref(ExactMatrix.from_flat(gens.field, nrows, ncols, flat))[1]


def koszul_tor_dims(gens: GeneratorSet, i_max: int | None = None, D: int | None = None) -> BettiTable:
    """Betti table of ``R/I`` from Koszul homology, exact over the generator field."""
    nv = gens.num_vars
    if i_max is None:
        i_max = nv
    if D is None:
        D = gens.max_degree() + nv + 1
    if i_max > nv:
        raise ValueError(f"i_max cannot exceed the number of variables {nv}")
    quots = {e: _Quotient(gens, e) for e in range(-nv - 1, D + 2)}
    entries = {}
    euler_ok = True
    for j in range(D + 1):
        ranks = {i: _koszul_rank(gens, quots, i, j) for i in range(1, min(i_max + 1, nv) + 1)}
        chi_chain = 0
        chi_betti = 0
        for i in range(0, nv + 1):
            dim_k = comb(nv, i) * quots[j - i].dim
            chi_chain += (-1) ** i * dim_k
            if i > i_max:
                continue
            b = dim_k - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if b:
                entries[i, j] = b
            chi_betti += (-1) ** i * b
        if i_max >= nv and chi_chain != chi_betti:
            euler_ok = False
    return BettiTable(entries, nv, i_max, D, euler_ok)


# ---------------------------------------------------------------------------
# Hochster route


def _squarefree_supports(gens: GeneratorSet) -> list:
    out = []
    for items, _ in gens.gens:
        if len(items) != 1:
            raise ValueError("Hochster's formula needs monomial generators")
        e, _c = items[0]
        if any(x > 1 for x in e):
            raise ValueError(f"generator {e} is not squarefree")
        out.append(frozenset(i for i, x in enumerate(e) if x))
    return out


def _reduced_homology_dims(faces_by_dim: dict, top: int, field) -> dict:
    """``dim H~_k`` for ``k = -1 .. top`` of a complex given by its faces (tuples)."""
    index = {k: {F: i for i, F in enumerate(faces_by_dim.get(k, []))} for k in range(-1, top + 2)}

    @lru_cache(maxsize=None)
    def rank(k: int) -> int:
        # boundary C_k -> C_{k-1}
        src, tgt = faces_by_dim.get(k, []), index.get(k - 1, {})
        if not src or not tgt:
            return 0
        flat = []
        for F in src:
            row = [0] * len(tgt)
            for pos in range(len(F)):
                row[tgt[F[:pos] + F[pos + 1:]]] = field.reduce(-1 if pos % 2 else 1)
            flat.extend(row)
        return rref(ExactMatrix.from_flat(field, len(src), len(tgt), flat))[1]

    return {k: len(faces_by_dim.get(k, [])) - rank(k) - rank(k + 1) for k in range(-1, top + 1)}


def hochster_oracle(gens: GeneratorSet, i_max: int | None = None, D: int | None = None) -> BettiTable:
    """Betti table of ``R/I`` for a squarefree monomial ideal via Hochster's formula.

    ``beta_{i,j} = sum_{|W| = j} dim H~_{j-i-1}(Δ_W)`` where ``Δ`` is the
    Stanley-Reisner complex (faces = squarefree monomials outside ``I``).
    """
    nv = gens.num_vars
    if i_max is None:
        i_max = nv
    if D is None:
        D = nv
    supports = _squarefree_supports(gens)
    if any(not S for S in supports):
        raise ValueError("the unit ideal has no Stanley-Reisner complex")

    def is_face(F) -> bool:
        Fs = set(F)
        return not any(S <= Fs for S in supports)

    entries: dict = {}
    for j in range(0, min(D, nv) + 1):
        for W in combinations(range(nv), j):
            faces: dict = {-1: [()]}
            for size in range(1, j + 1):
                fs = [F for F in combinations(W, size) if is_face(F)]
                if fs:
                    faces[size - 1] = fs
            h = _reduced_homology_dims(faces, max(j - 1, -1), gens.field)
            for i in range(0, i_max + 1):
                k = j - i - 1
                b = h.get(k, 0)
                if b:
                    entries[i, j] = entries.get((i, j), 0) + b
    return BettiTable(entries, nv, i_max, D)


# ---------------------------------------------------------------------------
# verdicts


def regularity(table: BettiTable) -> int:
    """``max (j - i)`` over nonzero entries; refuses tables that are not certified."""
    if not table.certified:
        raise UncertifiedTableError(
            f"table computed to i_max={table.i_max}, D={table.D} does not certify the regularity")
    return max(j - i for i, j, _ in table.nonzero())


def is_linear_resolution(gens: GeneratorSet, a: int, D: int | None = None) -> ResolutionVerdict:
    """Linear-resolution verdict for an ideal generated in degree ``a``.

    Also checks ``J = J^sat ∩ M^a`` degreewise, with ``J^sat`` from the
    iterated-colon saturation oracle.
    """
    nv = gens.num_vars
    if D is None:
        D = a + nv + 1
    counts = min_gen_degrees(gens, max(D, gens.max_degree()))
    if not counts or not is_equigenerated(counts) or min(counts) != a:
        raise NotEquigeneratedError(f"minimal generator degrees {counts} are not all equal to {a}")
    table = koszul_tor_dims(gens, nv, D)
    linear = all(j == a + i - 1 for i, j, _ in table.nonzero() if i >= 1)
    reg = regularity(table)
    sat, _ = saturation_pieces(gens, D)
    consistent = all(sat[d].space == span_in_degree(gens, d).space for d in range(a, D + 1))
    return ResolutionVerdict(a, reg, linear and reg == a - 1, (nv, D), consistent, table)
