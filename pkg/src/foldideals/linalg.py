"""Exact fields, dense matrices and canonical row spaces.

Two fields are supported: the rationals (default) and a prime field GF(p).
Python-side scalars are :class:`fractions.Fraction` for the rationals and
plain ``int`` residues in ``[0, p)`` for GF(p).  Elimination itself runs in
FLINT (``fmpq_mat`` / ``nmod_mat``); everything returned to callers is an
immutable value object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import flint

__all__ = [
    "FieldMismatchError",
    "DimensionMismatchError",
    "Residue",
    "RationalField",
    "PrimeField",
    "QQ",
    "DEFAULT_PRIME",
    "ExactMatrix",
    "RowSpace",
    "rref",
    "kernel",
    "annihilator",
    "subspace_sum",
    "subspace_intersect",
    "intersect_all",
    "subspace_leq",
    "preimage",
    "full_space",
    "zero_space",
]

DEFAULT_PRIME = 2**31 - 1


class FieldMismatchError(ValueError):
    """Raised when scalars or matrices from different fields are combined."""


class DimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Residue:
    """An explicitly tagged element of GF(modulus)."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)


class RationalField:
    """The field of rational numbers."""

    name = "rational"
    characteristic = 0

    def coerce(self, x) -> Fraction:
        if isinstance(x, Residue):
            raise FieldMismatchError(f"residue mod {x.modulus} used over the rationals")
        if isinstance(x, bool) or isinstance(x, float):
            raise FieldMismatchError(f"inexact or non-numeric scalar {x!r}")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, flint.fmpq):
            return Fraction(int(x.p), int(x.q))
        if isinstance(x, flint.fmpz):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        raise FieldMismatchError(f"cannot interpret {x!r} as a rational")

    def reduce(self, x):
        return x

    def inv(self, x):
        return 1 / Fraction(x)

    def _flint_entry(self, x):
        if x.denominator == 1:
            return int(x.numerator)
        return flint.fmpq(x.numerator, x.denominator)

    def _flint_matrix(self, nrows: int, ncols: int, flat: Sequence):
        return flint.fmpq_mat(nrows, ncols, [self._flint_entry(x) if x else 0 for x in flat])

    def _from_flint(self, e) -> Fraction:
        return Fraction(int(e.p), int(e.q))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"

    def describe(self):
        return "rational"


class PrimeField:
    """GF(p) for a word-sized prime p.  Results are characteristic-dependent."""

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if p < 2 or p >= 2**63 or not flint.fmpz(p).is_prime():
            raise ValueError(f"modulus {p} is not a word-sized prime")
        self.p = p

    name = "prime"

    @property
    def characteristic(self) -> int:
        return self.p

    def coerce(self, x) -> int:
        p = self.p
        if isinstance(x, Residue):
            if x.modulus != p:
                raise FieldMismatchError(f"residue mod {x.modulus} used in GF({p})")
            return x.value
        if isinstance(x, bool) or isinstance(x, float):
            raise FieldMismatchError(f"inexact or non-numeric scalar {x!r}")
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, flint.nmod):
            if x.modulus() != p:
                raise FieldMismatchError(f"nmod residue mod {x.modulus()} used in GF({p})")
            return int(x)
        raise FieldMismatchError(f"cannot interpret {x!r} in GF({p})")

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        return pow(x, -1, self.p)

    def _flint_matrix(self, nrows: int, ncols: int, flat: Sequence):
        return flint.nmod_mat(nrows, ncols, list(flat), self.p)

    def _from_flint(self, e) -> int:
        return int(e)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def describe(self):
        return {"prime": self.p}


QQ = RationalField()


class ExactMatrix:
    """Immutable dense matrix over an exact field.

    Rows are given as sequences of scalars; every entry is coerced into
    ``field`` (a :class:`Residue` of the wrong modulus raises
    :class:`FieldMismatchError`).
    """

    __slots__ = ("field", "nrows", "ncols", "_mat", "__dict__")

    def __init__(self, rows: Iterable[Sequence], field=QQ, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionMismatchError("ncols required for an empty matrix")
            ncols = len(rows[0])
        flat = []
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatchError(f"row {i} has {len(r)} entries, expected {ncols}")
            flat.extend(field.coerce(x) for x in r)
        self._init(field, len(rows), ncols, field._flint_matrix(len(rows), ncols, flat))

    def _init(self, field, nrows, ncols, mat):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._mat = mat

    @classmethod
    def _wrap(cls, field, mat) -> "ExactMatrix":
        obj = cls.__new__(cls)
        obj._init(field, mat.nrows(), mat.ncols(), mat)
        return obj

    @classmethod
    def from_flat(cls, field, nrows: int, ncols: int, flat: Sequence) -> "ExactMatrix":
        """Build from a row-major list of already-canonical scalars."""
        return cls._wrap(field, field._flint_matrix(nrows, ncols, flat))

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "ExactMatrix":
        return cls.from_flat(field, nrows, ncols, [0] * (nrows * ncols))

    @classmethod
    def identity(cls, field, n: int) -> "ExactMatrix":
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = 1
        return cls.from_flat(field, n, n, flat)

    @cached_property
    def rows(self) -> tuple:
        conv = self.field._from_flint
        flat = self._mat.entries()
        c = self.ncols
        return tuple(tuple(conv(e) for e in flat[i * c:(i + 1) * c]) for i in range(self.nrows))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def _check_field(self, other: "ExactMatrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return ExactMatrix.zeros(self.field, self.nrows, other.ncols)
        return ExactMatrix._wrap(self.field, self._mat * other._mat)

    def transpose(self) -> "ExactMatrix":
        if self.nrows == 0 or self.ncols == 0:
            return ExactMatrix.zeros(self.field, self.ncols, self.nrows)
        return ExactMatrix._wrap(self.field, self._mat.transpose())

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.ncols != other.ncols:
            raise DimensionMismatchError("column counts differ")
        flat = list(self._mat.entries()) + list(other._mat.entries())
        return ExactMatrix._wrap(
            self.field, _raw_matrix(self.field, self.nrows + other.nrows, self.ncols, flat)
        )

    def is_zero(self) -> bool:
        return all(not e for e in self._mat.entries())

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._mat.entries() == other._mat.entries())

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def __repr__(self):
        return f"ExactMatrix({[list(map(str, r)) for r in self.rows]}, field={self.field!r})"


def _vstack_many(field, ncols: int, mats: Sequence[ExactMatrix]) -> ExactMatrix:
    flat = []
    nrows = 0
    for m in mats:
        if m.ncols != ncols:
            raise DimensionMismatchError("column counts differ")
        if m.field != field:
            raise FieldMismatchError(f"{m.field!r} vs {field!r}")
        flat.extend(m._mat.entries())
        nrows += m.nrows
    return ExactMatrix._wrap(field, _raw_matrix(field, nrows, ncols, flat))


class RowSpace:
    """A subspace of ``field^ambient_dim`` held as a canonical RREF basis.

    Two row spaces are equal as subspaces exactly when their bases are
    entrywise equal, so ``==`` is subspace equality.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "__dict__")

    def __init__(self, basis: ExactMatrix, pivots: tuple):
        self.ambient_dim = basis.ncols
        self.basis = basis
        self.pivots = pivots

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, RowSpace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"RowSpace(dim={self.dim}, ambient={self.ambient_dim}, pivots={self.pivots})"

    @cached_property
    def _pivot_row(self) -> dict:
        return {p: i for i, p in enumerate(self.pivots)}

    def reduce(self, vector: Sequence) -> list:
        """Normal form of ``vector`` modulo the space (zero on every pivot column)."""
        field = self.field
        v = [field.coerce(x) for x in vector]
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector length differs from ambient dimension")
        rows = self.basis.rows
        for i, p in enumerate(self.pivots):
            f = v[p]
            if f:
                row = rows[i]
                v = [field.reduce(a - f * b) for a, b in zip(v, row)]
        return v

    def contains(self, vector: Sequence) -> bool:
        return not any(self.reduce(vector))

    def as_columns(self) -> ExactMatrix:
        return self.basis.transpose()


def _rref_mat(m: ExactMatrix) -> tuple[ExactMatrix, int]:
    if m.nrows == 0 or m.ncols == 0:
        return ExactMatrix.zeros(m.field, 0, m.ncols), 0
    mat, rank = m._mat.rref()
    rank = int(rank)
    flat = mat.entries()[: rank * m.ncols]
    return ExactMatrix._wrap(m.field, _raw_matrix(m.field, rank, m.ncols, flat)), rank


def _pivots_of(basis: ExactMatrix) -> tuple:
    flat = basis._mat.entries() if basis.nrows else []
    c = basis.ncols
    piv = []
    for i in range(basis.nrows):
        for j in range(c):
            if flat[i * c + j]:
                piv.append(j)
                break
    return tuple(piv)


def rref(m: ExactMatrix) -> tuple[RowSpace, int]:
    """Canonical reduced row echelon form of ``m`` and its rank."""
    basis, rank = _rref_mat(m)
    return RowSpace(basis, _pivots_of(basis)), rank


def span(m: ExactMatrix) -> RowSpace:
    return rref(m)[0]


def zero_space(field, ambient_dim: int) -> RowSpace:
    return RowSpace(ExactMatrix.zeros(field, 0, ambient_dim), ())


def full_space(field, ambient_dim: int) -> RowSpace:
    return RowSpace(ExactMatrix.identity(field, ambient_dim), tuple(range(ambient_dim)))


def _kernel_from_rref(space: RowSpace) -> RowSpace:
    field = space.field
    n = space.ambient_dim
    pivots = space.pivots
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    if not free:
        return zero_space(field, n)
    entries = space.basis._mat.entries() if space.dim else []
    flat = [0] * (len(free) * n)
    for k, f in enumerate(free):
        base = k * n
        flat[base + f] = 1
        for i, p in enumerate(pivots):
            e = entries[i * n + f]
            if e:
                flat[base + p] = -e
    # rows built from flint scalars directly; bypass coercion
    mat = ExactMatrix._wrap(field, _raw_matrix(field, len(free), n, flat))
    return rref(mat)[0]


def _raw_matrix(field, nrows, ncols, flat):
    if isinstance(field, RationalField):
        return flint.fmpq_mat(nrows, ncols, flat)
    return flint.nmod_mat(nrows, ncols, [int(x) for x in flat], field.p)


def kernel(m: ExactMatrix) -> RowSpace:
    """Right null space ``{v : m v^T = 0}`` as a row space of dimension cols - rank."""
    return _kernel_from_rref(rref(m)[0])


def annihilator(a: RowSpace) -> RowSpace:
    """All ``w`` with ``w . b = 0`` for every ``b`` in ``a``."""
    return _kernel_from_rref(a)


def _check_pair(a: RowSpace, b: RowSpace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")


def subspace_sum(a: RowSpace, b: RowSpace) -> RowSpace:
    _check_pair(a, b)
    if b.dim == 0:
        return a
    if a.dim == 0:
        return b
    return rref(a.basis.vstack(b.basis))[0]


def sum_all(spaces: Sequence[RowSpace], field, ambient_dim: int) -> RowSpace:
    mats = [s.basis for s in spaces if s.dim]
    if not mats:
        return zero_space(field, ambient_dim)
    return rref(_vstack_many(field, ambient_dim, mats))[0]


def intersect_all(spaces: Sequence[RowSpace], field, ambient_dim: int) -> RowSpace:
    """Intersection of several subspaces (the whole space for an empty list)."""
    for s in spaces:
        if s.ambient_dim != ambient_dim:
            raise DimensionMismatchError("ambient dimensions differ")
        if s.field != field:
            raise FieldMismatchError(f"{s.field!r} vs {field!r}")
    proper = [s for s in spaces if s.dim < ambient_dim]
    if not proper:
        return full_space(field, ambient_dim)
    if len(proper) == 1:
        return proper[0]
    if any(s.dim == 0 for s in proper):
        return zero_space(field, ambient_dim)
    conds = _vstack_many(field, ambient_dim, [annihilator(s).basis for s in proper])
    return kernel(conds)


def subspace_intersect(a: RowSpace, b: RowSpace) -> RowSpace:
    _check_pair(a, b)
    return intersect_all([a, b], a.field, a.ambient_dim)


def subspace_leq(a: RowSpace, b: RowSpace) -> bool:
    """True iff ``a`` is contained in ``b``."""
    _check_pair(a, b)
    if a.dim == 0:
        return True
    if a.dim > b.dim:
        return False
    if b.dim == b.ambient_dim:
        return True
    # a <= b  iff  ann(b) kills every basis row of a
    return (a.basis @ annihilator(b).as_columns()).is_zero()


def preimage(map_: ExactMatrix, target: RowSpace) -> RowSpace:
    """``{v : map_ v in target}`` for ``map_`` acting on column vectors."""
    if map_.nrows != target.ambient_dim:
        raise DimensionMismatchError(
            f"map has {map_.nrows} rows but target ambient dimension is {target.ambient_dim}"
        )
    if map_.field != target.field:
        raise FieldMismatchError(f"{map_.field!r} vs {target.field!r}")
    if target.dim == target.ambient_dim:
        return full_space(map_.field, map_.ncols)
    ann = annihilator(target).basis
    return kernel(ann @ map_)
