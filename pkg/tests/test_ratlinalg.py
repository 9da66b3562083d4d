"""정확 선형대수 테스트: 원시 벡터, rref, SNF, 정수 핵."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from app.utils.ratlinalg import (
    IntMatrix,
    coordinates_in_basis,
    determinant,
    integer_kernel_basis,
    nullspace_basis,
    primitive_vector,
    rank,
    smith_normal_form,
    solve_linear,
)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=5, bound=6):
    m = draw(st.integers(min_value=1, max_value=max_rows))
    n = draw(st.integers(min_value=1, max_value=max_cols))
    rows = draw(
        st.lists(
            st.lists(st.integers(min_value=-bound, max_value=bound), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
    return IntMatrix.from_rows(rows, n)


def test_primitive_vector_examples():
    assert primitive_vector((2, 2, -2)) == (1, 1, -1)
    assert primitive_vector((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    assert primitive_vector((0, -4)) == (0, -1)


def test_primitive_vector_rejects_zero():
    with pytest.raises(ValueError, match="zero vector has no primitive generator"):
        primitive_vector((0, 0, 0))


def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(rows, 3) == 2
    (k,) = nullspace_basis(rows, 3)
    assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in rows)


def test_solve_linear_and_determinant():
    rows = [[2, 1], [1, 3]]
    assert determinant(rows) == 5
    assert solve_linear(rows, [3, 4], 2) == (1, 1)
    assert solve_linear([[1, 1], [1, 1]], [0, 1], 2) is None


def test_coordinates_in_basis():
    basis = [(1, 0, 0), (1, 1, 0)]
    assert coordinates_in_basis(basis, (3, 1, 0)) == (2, 1)
    assert coordinates_in_basis(basis, (0, 0, 1)) is None


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_smith_normal_form_invariants(A):
    U, S, V = smith_normal_form(A)
    assert U @ A @ V == S
    assert abs(determinant(U.entries)) == 1
    assert abs(determinant(V.entries)) == 1
    # 대각 밖은 0
    for i in range(S.rows):
        for j in range(S.cols):
            if i != j:
                assert S.entries[i][j] == 0
    diag = S.diagonal()
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d != 0]
    assert diag[: len(nonzero)] == tuple(nonzero)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert len(nonzero) == rank(A.entries, A.cols)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_integer_kernel_basis(A):
    basis = integer_kernel_basis(A)
    assert len(basis) == A.cols - rank(A.entries, A.cols)
    for x in basis:
        assert all(a.denominator == 1 for a in x)
        assert all(v == 0 for v in A.apply(x))
    if basis:
        assert rank(basis, A.cols) == len(basis)
