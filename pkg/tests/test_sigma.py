from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from foldideals.linalg import QQ, PrimeField
from foldideals.sigma import (
    FormCollection,
    RankDeficientError,
    build_collection,
    canonicalize,
    code_profile,
    generalized_hamming_weights,
    height_profile,
    is_generic_support,
    rank_of,
    reembed,
)
from oracles import brute_ghw


def test_canonicalize_scales_first_nonzero_to_one():
    f = canonicalize([0, 3, -6])
    assert f.coeffs == (0, 1, -2)
    assert canonicalize([Fraction(1, 2), 1]).coeffs == (1, 2)


def test_proportional_forms_merge():
    s = build_collection([([1, 1, 0], 1), ([2, 2, 0], 2), ([0, 0, 1], 1)])
    assert s.s == 2
    assert s.multiplicities == (3, 1)
    assert s.N == 4


def test_duplicate_support_rejected():
    f = canonicalize([1, 0])
    with pytest.raises(ValueError):
        FormCollection((f, f), (1, 1))


def test_genericity(four_lines):
    assert is_generic_support(four_lines)
    bad = build_collection([([1, 0, 0], 1), ([0, 1, 0], 1), ([1, 1, 0], 1), ([0, 0, 1], 1)])
    assert not is_generic_support(bad)


def test_genericity_depends_on_field():
    # x, y, z, x+y+z, x+2y+z: the last three are dependent mod 2 but not over Q
    items = [([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1), ([1, 1, 1], 1), ([1, 2, 3], 1)]
    assert is_generic_support(build_collection(items, QQ))
    assert not is_generic_support(build_collection(items, PrimeField(2)))


def test_four_lines_weights_and_heights(four_lines):
    assert generalized_hamming_weights(four_lines) == [2, 3, 4]
    assert height_profile(four_lines) == {1: 3, 2: 3, 3: 2, 4: 1}


def test_rank_deficient_needs_reembed():
    s = build_collection([([1, 0, 0], 1), ([0, 1, 0], 1), ([1, 1, 0], 2)])
    assert rank_of(s) == 2
    with pytest.raises(RankDeficientError):
        generalized_hamming_weights(s)
    t, piv = reembed(s)
    assert piv == (0, 1)
    assert t.num_vars == 2
    assert generalized_hamming_weights(s, allow_reembed=True) == generalized_hamming_weights(t)
    # weights in rank 2: N = 4, drop the double form to lose one rank
    assert generalized_hamming_weights(t) == [2, 4]


def test_code_profile_matrix_columns_repeat(sigma_double_x):
    prof = code_profile(sigma_double_x)
    cols = prof.generator_matrix.transpose().rows
    assert len(cols) == 5
    assert cols[0] == cols[1]
    assert prof.weights == (2, 3, 5)


vec = st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any)


@given(st.lists(st.tuples(vec, st.integers(1, 3)), min_size=3, max_size=6))
def test_ghw_matches_subset_rank_oracle(items):
    s = build_collection(items)
    if rank_of(s) < 3:
        return
    cols = []
    for f, m in zip(s.forms, s.multiplicities):
        cols += [f.coeffs] * m
    w = generalized_hamming_weights(s)
    assert w == brute_ghw(cols, 3)
    assert all(a < b for a, b in zip(w, w[1:]))
    assert w[-1] == s.N


@given(st.lists(st.tuples(vec, st.integers(1, 3)), min_size=3, max_size=6))
def test_height_profile_monotone(items):
    s = build_collection(items)
    h = height_profile(s)
    vals = [h[a] for a in range(1, s.N + 1)]
    assert vals == sorted(vals, reverse=True)
    assert vals[0] == rank_of(s)
    assert vals[-1] == 1
