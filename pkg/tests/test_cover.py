import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_ones, closure_order, full_span_matrices
from prymcert.arith import Character, all_characters, char_pairing
from prymcert.cover import (
    CoveringMatrix,
    IntegralityError,
    InvalidCoveringError,
    canonical_character,
    eigenform_basis,
    eigenspace_dim,
    eigenspace_table,
    genus_cover,
    group_order,
    ramification_order,
    span_characters,
    validate,
)


def euler_genus(M):
    """Oracle: 2g - 2 = -2d + sum_j (d - d/ord_j), with d and ord_j by brute force."""
    d = closure_order(M.moduli, M.columns)
    ram = 0
    for col in M.columns:
        o = closure_order(M.moduli, [col])
        ram += d - d // o
    two_g_minus_2 = -2 * d + ram
    assert two_g_minus_2 % 2 == 0
    return two_g_minus_2 // 2 + 1


# --- validation ---------------------------------------------------------

def test_validate_cyclic(cyc10):
    r = validate(cyc10)
    assert r.valid and r.totally_ramified and r.group_is_full_product
    assert r.messages == ()


def test_validate_bad_column_sum():
    r = validate(CoveringMatrix((10,), ((1,),) * 4))
    assert not r.valid
    assert any("column_sum" in msg and "row 1" in msg for msg in r.messages)


def test_validate_two_rows(ab10_5):
    r = validate(ab10_5)
    assert r.valid and r.totally_ramified and r.group_is_full_product


def test_validate_few_branch_points_and_zero_column():
    r = validate(CoveringMatrix((6,), ((3,), (3,))))
    assert not r.valid and any("branch_count" in m for m in r.messages)
    r = validate(CoveringMatrix((6,), ((3,), (3,), (0,))))
    assert any("nonzero_column" in m for m in r.messages)


def test_not_totally_ramified():
    r = validate(CoveringMatrix((6,), ((2,), (2,), (2,))))
    assert r.valid and not r.totally_ramified and not r.group_is_full_product


def test_structural_errors():
    with pytest.raises(InvalidCoveringError):
        CoveringMatrix((10, 5), ((1,),))
    with pytest.raises(ValueError):
        CoveringMatrix((1,), ((0,),))


def test_entries_reduced():
    assert CoveringMatrix((6,), ((7,), (-1,), (0,))).columns == ((1,), (5,), (0,))


def test_invalid_matrix_rejected_by_operations():
    with pytest.raises(InvalidCoveringError, match="column_sum"):
        genus_cover(CoveringMatrix((10,), ((1,),) * 4))


# --- group order, ramification, genus -----------------------------------

def test_group_order_examples(cyc10, ab10_5):
    assert group_order(cyc10) == 10
    assert group_order(ab10_5) == 50
    assert group_order(CoveringMatrix((6,), ((2,),) * 6)) == 3


def test_ramification_examples(ab10_5):
    assert ramification_order(ab10_5, 0) == 10
    assert ramification_order(ab10_5, 14) == 5
    assert ramification_order(CoveringMatrix((6,), ((2,),) * 6), 0) == 3


def test_genus_examples(cyc10, cyc6, ab10_5):
    assert genus_cover(cyc10) == 36
    assert genus_cover(cyc6) == 10
    assert genus_cover(ab10_5) == 276
    # 1 + 50 * (13/2 - 1/2 * (10/10 + 5/5))
    assert 1 + 50 * (Fraction(13, 2) - Fraction(1, 2) * 2) == 276


@settings(max_examples=60, deadline=None)
@given(full_span_matrices())
def test_group_order_and_genus_match_oracles(M):
    assert group_order(M) == closure_order(M.moduli, M.columns) == math.prod(M.moduli)
    assert genus_cover(M) == euler_genus(M)


def test_group_order_by_annihilator_duality(rng):
    from conftest import random_valid_matrix
    for _ in range(25):
        M = random_valid_matrix(rng, moduli_pool=(4, 6, 9), max_m=2, max_s=8, full_span=False)
        ann = sum(
            1 for chi in all_characters(M.moduli)
            if all(char_pairing(chi, c) == 0 for c in M.columns)
        )
        assert group_order(M) * ann == math.prod(M.moduli)
        assert group_order(M) == closure_order(M.moduli, M.columns)


# --- eigenspaces ----------------------------------------------------------

def test_eigenspace_dim_examples(cyc10, ab10_5):
    assert eigenspace_dim(cyc10, Character((3,), (10,))) == 6
    assert eigenspace_dim(cyc10, Character((0,), (10,))) == 0
    assert eigenspace_dim(ab10_5, Character((1, 1), (10, 5))) == 12
    assert -1 + 10 * Fraction(9, 10) + 5 * Fraction(4, 5) == 12


def test_eigenspace_table_examples(cyc10, cyc6, ab10_5):
    t = eigenspace_table(cyc10)
    assert {n: t[(n,)] for n in range(10)} == {0: 0, **{n: 9 - n for n in range(1, 10)}}
    t6 = eigenspace_table(cyc6)
    assert [t6[(n,)] for n in range(6)] == [0, 4, 3, 2, 1, 0]
    assert t6.total() == 10
    assert eigenspace_table(ab10_5).total() == 276


def test_table_requires_full_span():
    with pytest.raises(InvalidCoveringError, match="span_not_full"):
        eigenspace_table(CoveringMatrix((6,), ((2,),) * 6))


@settings(max_examples=60, deadline=None)
@given(full_span_matrices())
def test_genus_consistency(M):
    t = eigenspace_table(M)
    assert t[(0,) * M.m] == 0
    assert all(d >= 0 for _, d in t.items())
    assert t.total() == genus_cover(M)


@settings(max_examples=20, deadline=None)
@given(full_span_matrices(moduli_pool=(2, 3, 6), max_m=2))
def test_table_matches_pointwise_route(M):
    t = eigenspace_table(M)
    for chi, d in t.items():
        assert eigenspace_dim(M, chi) == d


@pytest.mark.parametrize("n", [4, 6, 10, 14, 22])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_cyclic_closed_forms(n, k):
    s = k * n
    M = all_ones(n, s)
    t = eigenspace_table(M)
    for a in range(1, n):
        assert t[(a,)] == -1 + s * (1 - Fraction(a, n))
        assert t[(a,)] + t[(n - a,)] == s - 2
    assert genus_cover(M) == (-1 + Fraction(s, 2)) * (n - 1)


def test_non_full_span_characters():
    # span {0, 2, 4} in Z_6: characters of Z_3 represented by n = 0, 1, 2
    M = CoveringMatrix((6,), ((2,),) * 6)
    chars = span_characters(M)
    assert [c.components for c in chars] == [(0,), (1,), (2,)]
    assert canonical_character(M, Character((4,), (6,))) == Character((1,), (6,))
    assert sum(eigenspace_dim(M, c) for c in chars if not c.is_trivial) == genus_cover(M)
    with pytest.raises(ValueError, match="canonical"):
        eigenspace_dim(M, Character((4,), (6,)))


def test_non_full_span_sum_random(rng):
    from conftest import random_valid_matrix
    for _ in range(20):
        M = random_valid_matrix(rng, moduli_pool=(4, 6, 9), max_m=2, max_s=8, full_span=False)
        chars = span_characters(M)
        assert len(chars) == group_order(M)
        assert sum(eigenspace_dim(M, c) for c in chars) == genus_cover(M)


# --- eigenform bases ----------------------------------------------------

def test_basis_examples(cyc10):
    basis = eigenform_basis(cyc10, Character((1,), (10,)))
    assert len(basis) == 8
    assert [b.nu for b in basis] == list(range(8))
    assert all(b.floor_exponents == (-1,) * 10 for b in basis)
    assert eigenform_basis(cyc10, Character((9,), (10,))) == []
    with pytest.raises(ValueError):
        eigenform_basis(cyc10, Character((0,), (10,)))


def test_basis_zero_pairing_column(ab10_5):
    basis = eigenform_basis(ab10_5, Character((1, 0), (10, 5)))
    assert basis[0].floor_exponents == (-1,) * 10 + (0,) * 5
    assert "w1^1" in basis[0].formula()


@settings(max_examples=30, deadline=None)
@given(full_span_matrices(max_m=2), st.data())
def test_basis_cardinality(M, data):
    comps = tuple(data.draw(st.integers(0, n - 1)) for n in M.moduli)
    chi = Character(comps, M.moduli)
    if chi.is_trivial:
        return
    assert len(eigenform_basis(M, chi)) == eigenspace_dim(M, chi)


def test_json_round_trip(ab10_5, tmp_path):
    p = tmp_path / "m.json"
    import json
    p.write_text(json.dumps(ab10_5.to_dict()))
    assert CoveringMatrix.load(p) == ab10_5
    assert CoveringMatrix.from_dict({"family": ab10_5.to_dict()}) == ab10_5
    with pytest.raises(InvalidCoveringError, match="columns"):
        CoveringMatrix.from_dict({"moduli": [10]})


def test_overflow_detected():
    from prymcert.cover import _pairing_matrix
    big = (2**40, 2**40 - 1)
    M = CoveringMatrix(big, ((1, 1), (-1, -1), (0, 1), (0, -1)))
    with pytest.raises(OverflowError):
        _pairing_matrix(M)
