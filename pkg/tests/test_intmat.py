import pytest

from cayley_chroma.intmat import (
    AllZeroRowsError,
    IntMatrix,
    IntOverflowError,
    RowCombo,
    SignedPermWitness,
    UnimodularWitness,
    apply_row_combo,
    collapse_rows,
    column_hnf,
    delete_zero_rows,
    drop_dependent_columns,
    find_three_divisible_pair,
    has_loops,
    is_bipartite,
    lattice_member,
    reduce_column,
    row_divisible_by,
    signed_permutations,
    smith_normal_form,
    xgcd,
)


def M(rows):
    return IntMatrix(rows)


def test_xgcd_bezout():
    for a in range(-12, 13):
        for b in range(-12, 13):
            g, x, y = xgcd(a, b)
            assert g >= 0 and a * x + b * y == g
            if a or b:
                assert a % g == 0 and b % g == 0


def test_matrix_rejects_non_integers():
    with pytest.raises(TypeError):
        IntMatrix([[1.0, 2]])
    with pytest.raises(TypeError):
        IntMatrix([[True, 2]])
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])


def test_fixed_width_overflow():
    A = IntMatrix([[100, 0], [0, 100]], bits=8)
    with pytest.raises(IntOverflowError):
        A @ A


def test_determinant():
    assert M([[2, 1], [1, 3]]).determinant() == 5
    assert M([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).determinant() == -1
    assert M([[1, 2], [2, 4]]).determinant() == 0


@pytest.mark.parametrize(
    "src, expected",
    [
        ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
        ([[2, 3]], [[1, 0]]),
        ([[3, 0], [1, 3]], [[3, 0], [1, 3]]),
        ([[0, 3], [2, 1]], [[3, 0], [1, 2]]),
    ],
)
def test_column_hnf(src, expected):
    hb = column_hnf(M(src))
    assert hb.H == M(expected)
    assert M(src) @ hb.U.U == hb.H


def test_column_hnf_identity_transform():
    assert column_hnf(M([[1, 0], [0, 1]])).U.U == IntMatrix.identity(2)


def test_lattice_member_examples():
    assert lattice_member(M([[2, 3]]), (1,)) == (-1, 1)
    assert lattice_member(M([[1, 0], [0, 1], [3, 4]]), (1, 0, 0)) is None
    assert lattice_member(M([[5, 7], [2, 9]]), (0, 0)) == (0, 0)


def test_has_loops_examples():
    w = has_loops(M([[1]]))
    assert (w.index, w.coefficients) == (0, (1,))
    w = has_loops(M([[2, 3]]))
    assert (w.index, w.coefficients) == (0, (-1, 1))
    assert has_loops(M([[1, 0], [0, 1], [3, 4]])) is None


def test_is_bipartite_examples():
    assert is_bipartite(M([[2], [2]]))
    assert not is_bipartite(M([[1], [1], [1]]))
    assert is_bipartite(M([[2, 0], [1, 1], [1, 1], [1, 1], [1, 1]]))


def test_delete_zero_rows():
    assert delete_zero_rows(M([[1, 0], [0, 0], [0, 1]])) == M([[1, 0], [0, 1]])
    A = M([[1, 2], [3, 4]])
    assert delete_zero_rows(A) == A
    with pytest.raises(AllZeroRowsError):
        delete_zero_rows(M([[0, 0]]))


def test_drop_dependent_columns():
    assert drop_dependent_columns(M([[2, 3]])) == M([[1]])
    assert drop_dependent_columns(M([[1, 2], [0, 0]])) == M([[1], [0]])
    assert drop_dependent_columns(M([[2, 1], [1, 3]])).ncols == 2


def test_collapse_rows():
    assert collapse_rows(M([[1, 0], [1, 0], [1, 2]]), 0, 1, 1) == M([[2, 0], [1, 2]])
    assert collapse_rows(M([[1, 0], [0, 1], [3, 4]]), 1, 2, 1) == M([[1, 0], [3, 5]])
    assert collapse_rows(M([[1, 2], [1, 2], [0, 1]]), 0, 1, -1) == M([[0, 0], [0, 1]])


def test_reduce_column():
    assert reduce_column(M([[2], [4]]), 0) == M([[1], [2]])
    assert reduce_column(M([[3], [6], [9]]), 0) == M([[1], [2], [3]])
    assert reduce_column(M([[2], [3]]), 0) == M([[2], [3]])


@pytest.mark.parametrize(
    "src, factors",
    [([[2, 0], [0, 3]], (1, 6)), ([[1, 0], [0, 1]], (1, 1)), ([[3, 0], [1, 3]], (1, 9))],
)
def test_smith_factors(src, factors):
    sf = smith_normal_form(M(src))
    assert sf.factors == factors and sf.free_rank == 0


def test_smith_free_rank():
    sf = smith_normal_form(M([[1, 0], [0, 1], [3, 4]]))
    assert sf.free_rank == 1


def test_signed_permutations():
    perms = list(signed_permutations(3))
    assert len(perms) == 48 and len(set(perms)) == 48
    assert perms[0] == IntMatrix.identity(3)
    assert len(list(signed_permutations(4))) == 384


def test_witness_validation():
    with pytest.raises(ValueError):
        UnimodularWitness(M([[2, 0], [0, 1]]))
    with pytest.raises(ValueError):
        SignedPermWitness(M([[1, 1], [0, 1]]))


def test_three_divisible_pair_examples():
    assert find_three_divisible_pair(M([[1, 1], [4, 1], [1, 4], [7, 7], [1, -2]])) == RowCombo(0, 1, -1)
    assert find_three_divisible_pair(M([[1, 0], [2, 0], [0, 1], [1, 1], [1, 2]])) == RowCombo(0, 1, 1)
    assert find_three_divisible_pair(M([[1, 0], [2, 1], [3, 6], [1, 1], [1, 2]])) == RowCombo(2)


def test_apply_row_combo_single_keeps_divisible_row():
    A = M([[1, 0], [2, 1], [3, 6], [1, 1], [1, 2]])
    B = apply_row_combo(A, RowCombo(2))
    assert B.shape == (4, 2)
    assert any(row_divisible_by(r, 3) for r in B.rows)
