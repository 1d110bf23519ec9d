"""Dense linear algebra for basis systems: LU factorization with partial pivoting and solves"""

import warnings
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.linalg import LinAlgWarning, lu_factor
from scipy.linalg import lu_solve as _scipy_lu_solve

from paravec.exceptions import DimensionMismatch, SingularMatrix

RealMatrix = npt.NDArray[np.float64]

SINGULAR_TOL = 1e-11


def as_matrix(data: npt.ArrayLike, *, name: str = "matrix", ndim: int = 2) -> RealMatrix:
    """Convert ``data`` to a float array with ``ndim`` dimensions and finite entries"""
    array = np.array(data, dtype=np.float64)
    if array.ndim != ndim:
        raise DimensionMismatch(f"{name} must have {ndim} dimension(s), got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise DimensionMismatch(f"{name} has non finite entries")
    return array


@dataclass(frozen=True)
class LuFactorization:
    """
    Packed LU factors of a square matrix.

    ``factors`` holds L (unit lower, below the diagonal) and U (upper, diagonal included) as returned by
    LAPACK ``getrf``; ``pivots`` are its row interchanges.
    """

    factors: RealMatrix
    pivots: npt.NDArray[np.int32]

    @property
    def size(self) -> int:
        return self.factors.shape[0]

    @property
    def lower(self) -> RealMatrix:
        return np.tril(self.factors, k=-1) + np.eye(self.size)

    @property
    def upper(self) -> RealMatrix:
        return np.triu(self.factors)

    @property
    def permutation(self) -> npt.NDArray[np.intp]:
        """Row order ``perm`` such that ``a[perm] == lower @ upper``"""
        perm = np.arange(self.size)
        for row, swap in enumerate(self.pivots):
            perm[[row, swap]] = perm[[swap, row]]
        return perm


def lu_factorize(a: npt.ArrayLike, singular_tol: float = SINGULAR_TOL) -> LuFactorization:
    """
    Factorize a square matrix with partial pivoting.

    Args:
        a: The square matrix.
        singular_tol: Relative threshold; a pivot below ``singular_tol`` times the largest row norm
            flags the matrix as singular.

    Returns:
        LuFactorization: The packed factors.

    Raises:
        DimensionMismatch: If ``a`` is not square.
        SingularMatrix: If a pivot is numerically zero.
    """
    matrix = as_matrix(a)
    rows, cols = matrix.shape
    if rows != cols:
        raise DimensionMismatch(f"Cannot factorize a {rows}x{cols} matrix")
    scale = float(np.max(np.linalg.norm(matrix, ord=np.inf, axis=1))) if rows else 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        warnings.simplefilter("ignore", RuntimeWarning)
        factors, pivots = lu_factor(matrix)
    smallest = float(np.min(np.abs(np.diag(factors)))) if rows else 1.0
    if scale == 0.0 or smallest < singular_tol * scale:
        raise SingularMatrix(f"Matrix is singular (pivot {smallest:.3e}, scale {scale:.3e})")
    return LuFactorization(factors=factors, pivots=pivots)


def lu_solve(f: LuFactorization, rhs: npt.ArrayLike) -> RealMatrix:
    """Solve ``a @ x = rhs`` for a vector or for every column of a matrix"""
    values = np.asarray(rhs, dtype=np.float64)
    if values.ndim not in (1, 2) or values.shape[0] != f.size:
        raise DimensionMismatch(f"Right hand side of shape {values.shape} does not fit a {f.size}x{f.size} system")
    if values.ndim == 2 and values.shape[1] == 0:
        return np.zeros_like(values)
    return _scipy_lu_solve((f.factors, f.pivots), values)
