"""Ideals generated by a-fold products of linear forms.

For a collection with support ``l_1..l_s`` and multiplicities ``m_i`` the
a-fold products are exactly ``l_1^{t_1} ... l_s^{t_s}`` with
``0 <= t_i <= m_i`` and ``sum t_i = a``, so generators are enumerated as
bounded compositions rather than as a-subsets of the N-element multiset.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Sequence

from .graded import (
    GeneratorSet,
    GradedPiece,
    colon_piece,
    constant_poly,
    pieces_equal,
    poly_mul,
    span_in_degree,
)
from .sigma import FormCollection, NonGenericSupportError, is_generic_support

__all__ = [
    "bounded_compositions",
    "FoldIdeal",
    "fold_generators",
    "expand_product",
    "piece",
    "ideal_power",
    "recursion_identity_check",
    "power_identity_check",
    "colon_identity_check",
]


def bounded_compositions(a: int, caps: Sequence[int]) -> list:
    """All ``t`` with ``0 <= t_i <= caps[i]`` and ``sum t = a``, lexicographically descending."""
    caps = list(caps)
    out: list = []
    suffix = [0] * (len(caps) + 1)
    for i in range(len(caps) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]

    def rec(i, left, prefix):
        if i == len(caps):
            if left == 0:
                out.append(tuple(prefix))
            return
        hi = min(caps[i], left)
        lo = max(0, left - suffix[i + 1])
        for t in range(hi, lo - 1, -1):
            prefix.append(t)
            rec(i + 1, left - t, prefix)
            prefix.pop()

    if a >= 0:
        rec(0, a, [])
    return out


class _ExpansionCache:
    """Expanded products ``l^t`` keyed by (forms, field, t); one build per key."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}
        self._pending: dict = {}

    def get(self, forms: tuple, field, t: tuple) -> dict:
        key = (forms, field, t)
        with self._lock:
            if key in self._data:
                return self._data[key]
            ev = self._pending.get(key)
            owner = ev is None
            if owner:
                ev = self._pending[key] = threading.Event()
        if not owner:
            ev.wait()
            return self._data[key]
        try:
            value = _expand(forms, field, t)
            with self._lock:
                self._data[key] = value
        finally:
            with self._lock:
                self._pending.pop(key, None)
            ev.set()
        return value


def _expand(forms: tuple, field, t: tuple) -> dict:
    num_vars = forms[0].num_vars
    out = constant_poly(num_vars, 1, field)
    for f, k in zip(forms, t):
        lp = f.poly(field)
        for _ in range(k):
            out = poly_mul(out, lp, field)
    return out


_CACHE = _ExpansionCache()


def expand_product(sigma: FormCollection, t: Sequence[int]) -> dict:
    """The polynomial ``l_1^{t_1} ... l_s^{t_s}`` (cached)."""
    return _CACHE.get(sigma.forms, sigma.field, tuple(t))


@dataclass(frozen=True)
class FoldIdeal:
    """``I_a`` of a collection, with generators stored as exponent vectors over the support."""

    sigma: FormCollection
    a: int
    gens: tuple

    @property
    def num_vars(self) -> int:
        return self.sigma.num_vars

    @property
    def is_unit(self) -> bool:
        return self.a == 0

    @property
    def is_zero(self) -> bool:
        return self.a > self.sigma.N

    @cached_property
    def generator_set(self) -> GeneratorSet:
        if self.is_unit:
            return GeneratorSet([constant_poly(self.num_vars, 1, self.sigma.field)],
                                self.num_vars, self.sigma.field)
        return GeneratorSet([expand_product(self.sigma, t) for t in self.gens],
                            self.num_vars, self.sigma.field)


def fold_generators(sigma: FormCollection, a: int) -> FoldIdeal:
    if a < 0:
        raise ValueError("fold count must be non-negative")
    return FoldIdeal(sigma, a, tuple(bounded_compositions(a, sigma.multiplicities)))


def piece(ideal: FoldIdeal, d: int) -> GradedPiece:
    """Degree-``d`` slice of ``I_a``."""
    return span_in_degree(ideal.generator_set, d)


def _fold_set(sigma: FormCollection | None, a: int, num_vars: int, field) -> GeneratorSet:
    # sigma None is the empty collection: I_0 = R, I_a = 0 for a > 0
    if sigma is None:
        polys = [constant_poly(num_vars, 1, field)] if a == 0 else []
        return GeneratorSet(polys, num_vars, field)
    return fold_generators(sigma, a).generator_set


def ideal_power(gens: GeneratorSet, m: int) -> GeneratorSet:
    """Generators of ``I^m``: all m-fold products of the given generators."""
    if m < 0:
        raise ValueError("power must be non-negative")
    polys = [dict(items) for items, _ in gens.gens]
    if m == 0:
        return GeneratorSet([constant_poly(gens.num_vars, 1, gens.field)], gens.num_vars, gens.field)
    seen = set()
    out = []
    for combo in combinations_with_replacement(range(len(polys)), m):
        f = polys[combo[0]]
        for i in combo[1:]:
            f = poly_mul(f, polys[i], gens.field)
        key = tuple(sorted(f.items()))
        if key not in seen:
            seen.add(key)
            out.append(f)
    return GeneratorSet(out, gens.num_vars, gens.field)


def recursion_identity_check(sigma: FormCollection, a: int, D: int, index: int | None = None) -> bool:
    """``I_a(S) = l * I_{a-1}(S - l) + I_a(S - l)`` degreewise up to ``D``.

    ``S - l`` removes one copy of the support form at ``index`` (default:
    the last one).
    """
    i = sigma.s - 1 if index is None else index
    nv, field = sigma.num_vars, sigma.field
    rest = sigma.remove_one(i)
    ell = sigma.forms[i].poly(field)
    lower = _fold_set(rest, a - 1, nv, field) if a >= 1 else GeneratorSet([], nv, field)
    rhs = GeneratorSet([poly_mul(ell, g, field) for g in lower.polys()]
                       + _fold_set(rest, a, nv, field).polys(), nv, field)
    lhs = fold_generators(sigma, a).generator_set
    return pieces_equal(lhs, rhs, D)


def power_identity_check(sigma: FormCollection, a: int, m: int, D: int) -> bool:
    """``(I_a(l_1 .. l_s))^m = I_{ma}(l_1^m .. l_s^m)`` degreewise up to ``D``."""
    if any(k != 1 for k in sigma.multiplicities):
        raise ValueError("power identity is stated for multiplicity-one collections")
    if m < 1:
        raise ValueError("m must be at least 1")
    lhs = ideal_power(fold_generators(sigma, a).generator_set, m)
    rhs = fold_generators(sigma.scaled(m), m * a).generator_set
    return pieces_equal(lhs, rhs, D)


def colon_identity_check(sigma: FormCollection, a: int, D: int, index: int = 0) -> bool:
    """``(I_a(S) : l) = I_{a-1}(S - l)`` degreewise up to ``D`` (generic support only)."""
    if not is_generic_support(sigma):
        raise NonGenericSupportError("the colon identity is only claimed for generic support")
    if not 1 <= a <= sigma.N:
        raise ValueError(f"need 1 <= a <= N = {sigma.N}")
    nv, field = sigma.num_vars, sigma.field
    I = fold_generators(sigma, a).generator_set
    J = _fold_set(sigma.remove_one(index), a - 1, nv, field)
    ell = sigma.forms[index].poly(field)
    return all(colon_piece(I, ell, d).space == span_in_degree(J, d).space for d in range(D + 1))
