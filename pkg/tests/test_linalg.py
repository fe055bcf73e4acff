import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bvloop.linalg import (
    AbelianGroup,
    determinant,
    homology_at,
    integer_matrix,
    invariant_factors,
    kernel_basis,
    matmul,
    smith_normal_form,
)

entries = st.integers(-9, 9)


@st.composite
def matrices(draw, max_dim=5):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(entries) for _ in range(n)] for _ in range(m)]


def as_list(M):
    return [[int(v) for v in row] for row in M]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_form_factorisation(rows):
    M = integer_matrix(rows)
    snf = smith_normal_form(M)
    assert as_list(matmul(matmul(snf.U, M), snf.V)) == as_list(snf.D)
    assert abs(determinant(snf.U)) == 1 and abs(determinant(snf.V)) == 1
    assert as_list(matmul(snf.U, snf.U_inv)) == as_list(np.eye(M.shape[0], dtype=int))
    assert as_list(matmul(snf.V, snf.V_inv)) == as_list(np.eye(M.shape[1], dtype=int))
    D = as_list(snf.D)
    off = [D[i][j] for i in range(len(D)) for j in range(len(D[0])) if i != j]
    assert not any(off)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_invariant_factors_match_minors(rows):
    got = [d for d in invariant_factors(integer_matrix(rows)) if d]
    assert got == oracles.invariant_factors(rows)
    assert all(b % a == 0 for a, b in zip(got, got[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_determinant_matches_cofactor_expansion(rows):
    k = min(len(rows), len(rows[0]))
    square = [r[:k] for r in rows[:k]]
    assert determinant(integer_matrix(square)) == oracles.det(square)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_basis_is_saturated(rows):
    M = integer_matrix(rows)
    K = kernel_basis(M)
    assert not any(v for row in as_list(matmul(M, K)) for v in row)
    assert K.shape[1] == M.shape[1] - oracles.rank(rows)
    if K.shape[1]:
        # a saturated lattice has trivial cokernel torsion
        assert oracles.cokernel(as_list(K), M.shape[1])[1] == ()


def test_abelian_group_normalisation():
    assert AbelianGroup.from_cyclic([2, 3]) == AbelianGroup(0, (6,))
    assert AbelianGroup.from_cyclic([0, 4, 6, 1]) == AbelianGroup(1, (2, 12))
    assert str(AbelianGroup(1, (3,))) == "Z + Z_3"
    assert str(AbelianGroup()) == "0"
    assert str(AbelianGroup(2)) == "Z^2"
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        AbelianGroup(-1)


def test_cokernel_examples():
    assert AbelianGroup.cokernel(integer_matrix([[2, 0], [0, 3]])) == AbelianGroup(0, (6,))
    assert AbelianGroup.cokernel(integer_matrix([[3]])) == AbelianGroup(0, (3,))
    assert AbelianGroup.cokernel(integer_matrix([], 2, 0)) == AbelianGroup(2)


def test_homology_rejects_bad_input():
    with pytest.raises(ValueError):
        homology_at(integer_matrix([[1]]), integer_matrix([[1, 1]]))
    with pytest.raises(ValueError):
        homology_at(integer_matrix([[1], [0]]), integer_matrix([[1, 0]]))


def test_homology_small_complexes():
    # Z --3--> Z --0--> Z
    assert homology_at(integer_matrix([[3]]), integer_matrix([[0]])) == AbelianGroup(0, (3,))
    # Z --(1,1)--> Z^2 --(1,-1)--> Z
    assert homology_at(integer_matrix([[1], [1]]), integer_matrix([[1, -1]])) == AbelianGroup()
    # Z --(2,2)--> Z^2 --(1,-1)--> Z : ker is spanned by (1,1) and im = 2(1,1)
    assert homology_at(integer_matrix([[2], [2]]), integer_matrix([[1, -1]])) == AbelianGroup(0, (2,))
