from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from foldideals.fold import piece
from foldideals.graded import quotient_dim
from foldideals.sigma import NonGenericSupportError, build_collection
from foldideals.star import (
    MonomialStarModel,
    StarConfig,
    mono_containment,
    mono_power_member,
    mono_symbolic_member,
    mono_symbolic_min_gens,
    phi_transfer_check,
    resurgence_formula,
    resurgence_search,
    star_ideal,
    symbolic_power_piece,
    verify_ghm,
)
from oracles import (
    brute_containment,
    brute_power_member,
    brute_symbolic_member,
    brute_symbolic_min_gens,
    piece_dim,
    variables,
)

# GHM dims in P^2 for four lines, c = 2: dim (I^m)_d for d = 0..3m+4 (sympy + Fraction Gauss)
GHM_P2_DIMS = {
    1: [0, 0, 0, 4, 9, 15, 22, 30],
    2: [0, 0, 0, 0, 0, 0, 10, 18, 27, 37, 48],
    3: [0, 0, 0, 0, 0, 0, 0, 0, 0, 19, 30, 42, 55, 69],
}


def test_config_validation(four_lines, sigma_double_x):
    with pytest.raises(ValueError):
        StarConfig(sigma_double_x, 2)
    with pytest.raises(ValueError):
        StarConfig(four_lines, 3)
    bad = build_collection([([1, 0, 0], 1), ([0, 1, 0], 1), ([1, 1, 0], 1), ([0, 0, 1], 1)])
    with pytest.raises(NonGenericSupportError):
        StarConfig(bad, 2)


def test_c1_is_principal(four_lines):
    A = StarConfig(four_lines, 1)
    I = star_ideal(A)
    assert I.a == 4 and len(I.gens) == 1


def test_six_points(four_lines):
    A = StarConfig(four_lines, 2)
    gens = star_ideal(A).generator_set
    assert len(gens) == 4
    assert [quotient_dim(gens, d) for d in range(2, 8)] == [6, 6, 6, 6, 6, 6]


def test_symbolic_m1_is_star_ideal(four_lines):
    A = StarConfig(four_lines, 2)
    for d in range(8):
        assert symbolic_power_piece(A, 1, d).space == piece(star_ideal(A), d).space


@pytest.mark.parametrize("m", [1, 2, 3])
def test_ghm_p2(four_lines, m):
    A = StarConfig(four_lines, 2)
    rep = verify_ghm(A, m, 3 * m + 4, report=True)
    assert rep.ok
    assert [rep.dims[d][0] for d in range(3 * m + 5)] == GHM_P2_DIMS[m]


def test_ghm_live_oracle_m2(four_lines):
    xs = variables(3)
    a, b, c = xs
    lines = [a, b, c, a + b + c]
    import sympy
    star = [sympy.expand(sympy.prod(S)) for S in combinations(lines, 3)]
    sq = [sympy.expand(f * g) for f, g in combinations(star, 2)] + [sympy.expand(f * f) for f in star]
    A = StarConfig(four_lines, 2)
    rep = verify_ghm(A, 2, 8, report=True)
    for d in (6, 7, 8):
        assert rep.dims[d][0] == piece_dim(sq, xs, d)


def test_ghm_bound_check(four_lines):
    with pytest.raises(ValueError):
        verify_ghm(StarConfig(four_lines, 2), 2, 5)


def test_mono_membership_examples():
    M = MonomialStarModel(4, 2)
    assert not mono_symbolic_member(M, (1, 1, 0, 0), 1)
    assert mono_symbolic_member(M, (1, 1, 1, 0), 1)
    assert mono_symbolic_member(M, (2, 2, 2, 1), 3)
    assert not mono_power_member(M, (1, 1, 1, 1), 2)
    assert mono_power_member(M, (2, 2, 2, 1), 2)
    assert mono_power_member(M, (3, 3, 3, 3), 3)
    assert not mono_containment(M, 2, 2)
    assert mono_containment(M, 3, 2)
    assert not mono_containment(M, 1, 2)


def test_model_rejects_bad_exponents():
    M = MonomialStarModel(4, 2)
    with pytest.raises(ValueError):
        mono_symbolic_member(M, (1, 1, 1), 1)
    with pytest.raises(ValueError):
        MonomialStarModel(4, 4)


model_params = st.sampled_from([(3, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 3)])


@given(model_params, st.lists(st.integers(0, 4), min_size=5, max_size=5), st.integers(1, 4))
def test_membership_matches_brute_force(sc, t, k):
    s, c = sc
    t = tuple(t[:s])
    M = MonomialStarModel(s, c)
    assert mono_symbolic_member(M, t, k) == brute_symbolic_member(t, c, k)
    assert mono_power_member(M, t, k) == brute_power_member(t, c, k)


@pytest.mark.parametrize("s,c,m", [(4, 2, 3), (4, 3, 2), (5, 3, 3), (5, 2, 4)])
def test_min_gens_match_uncapped_enumeration(s, c, m):
    assert sorted(mono_symbolic_min_gens(MonomialStarModel(s, c), m)) == brute_symbolic_min_gens(s, c, m)


def test_resurgence_formula():
    assert resurgence_formula(4, 2) == Fraction(3, 2)
    assert resurgence_formula(5, 3) == Fraction(9, 5)
    assert resurgence_formula(7, 1) == 1


def test_resurgence_search_four_two():
    rep = resurgence_search(MonomialStarModel(4, 2), 12, 8)
    assert rep.ok
    assert rep.max_failing_ratio == Fraction(10, 7)
    assert rep.closest_failures == [(10, 7)]
    assert rep.interval == (Fraction(10, 7), Fraction(3, 2))


def test_resurgence_table_matches_brute_force_small():
    for s, c in ((4, 2), (5, 3)):
        rep = resurgence_search(MonomialStarModel(s, c), 6, 4)
        for (m, r), ok in rep.table.items():
            assert ok == brute_containment(s, c, m, r)


def test_five_three_gap_cells_brute_force():
    # the only m/r in [49/30, 9/5) with r <= 6 are all contained
    for m, r in ((5, 3), (7, 4), (10, 6)):
        assert brute_containment(5, 3, m, r)
    assert not brute_containment(5, 3, 8, 5)


def test_phi_transfer_examples(four_lines):
    A = StarConfig(four_lines, 2)
    r11 = phi_transfer_check(A, 1, 1, 7, report=True)
    assert r11.monomial_contained and r11.generic_contained and r11.certified
    r22 = phi_transfer_check(A, 2, 2, 10, report=True)
    assert not r22.monomial_contained and not r22.generic_contained
    r32 = phi_transfer_check(A, 3, 2, 10, report=True)
    assert r32.monomial_contained and r32.generic_contained and r32.certified
    assert r32.ok
