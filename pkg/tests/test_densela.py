import numpy as np
import pytest

from paravec.densela import as_matrix, lu_factorize, lu_solve
from paravec.exceptions import DimensionMismatch, SingularMatrix

MATRIX = np.array([[2.0, 1.0, 1.0], [4.0, -6.0, 0.0], [-2.0, 7.0, 2.0]])


def test_factors_reproduce_the_matrix():
    f = lu_factorize(MATRIX)

    assert f.size == 3
    assert np.allclose(MATRIX[f.permutation], f.lower @ f.upper)
    assert np.allclose(np.diag(f.lower), 1.0)


def test_solve_vector_and_matrix():
    f = lu_factorize(MATRIX)
    rhs = np.array([5.0, -2.0, 9.0])

    assert np.allclose(lu_solve(f, rhs), np.linalg.solve(MATRIX, rhs))
    block = np.column_stack([rhs, 2 * rhs])
    assert np.allclose(lu_solve(f, block), np.linalg.solve(MATRIX, block))


def test_solve_without_columns():
    f = lu_factorize(MATRIX)
    assert lu_solve(f, np.zeros((3, 0))).shape == (3, 0)


@pytest.mark.parametrize(
    "matrix",
    [
        [[1.0, 2.0], [2.0, 4.0]],
        [[0.0, 0.0], [0.0, 0.0]],
        [[1.0, 1.0], [1.0, 1.0 + 1e-14]],
    ],
    ids=["dependent rows", "zero", "nearly dependent"],
)
def test_singular(matrix):
    with pytest.raises(SingularMatrix):
        lu_factorize(matrix)


def test_not_square():
    with pytest.raises(DimensionMismatch) as err:
        lu_factorize(np.ones((2, 3)))
    assert err.value.message == "Cannot factorize a 2x3 matrix"


def test_rhs_size():
    with pytest.raises(DimensionMismatch):
        lu_solve(lu_factorize(MATRIX), np.ones(2))


def test_as_matrix_rejects_non_finite():
    with pytest.raises(DimensionMismatch):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(DimensionMismatch):
        as_matrix([1.0, 2.0], name="rhs")


@pytest.mark.parametrize("size", [1, 10, 50, 200])
def test_reconstruction_of_random_matrices(size):
    matrix = np.random.default_rng(size).normal(size=(size, size)) + size * np.eye(size)
    f = lu_factorize(matrix)

    error = np.linalg.norm(matrix[f.permutation] - f.lower @ f.upper, ord=np.inf)
    assert error <= 1e-9 * np.linalg.norm(matrix, ord=np.inf)


def test_solve_recovers_known_solution():
    rng = np.random.default_rng(10)
    matrix = rng.normal(size=(10, 10)) + 10.0 * np.eye(10)
    x = rng.normal(size=10)

    assert np.allclose(lu_solve(lu_factorize(matrix), matrix @ x), x, rtol=0.0, atol=1e-8)


def test_permutation_matrix():
    f = lu_factorize([[0.0, 1.0], [1.0, 0.0]])

    assert np.array_equal(f.permutation, [1, 0])
    assert np.allclose(lu_solve(f, [2.0, 3.0]), [3.0, 2.0])
