"""
Simplex dictionaries of the parametrized problem

A dictionary is fixed by its basis, a set of m column indices of ``[A I]`` (0-based; ``0..n-1`` are the
structural variables, ``n..n+m-1`` the slacks). It caches ``B^-1 b``, ``B^-1 N``, the reduced cost matrix
``Z_N = (B^-1 N)^T P_B - P_N`` (one row per nonbasic variable) and ``xi = P_B^T B^-1 b``.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from paravec.densela import SINGULAR_TOL, RealMatrix, lu_factorize, lu_solve
from paravec.exceptions import PreconditionViolated, SingularBasis, SingularMatrix
from paravec.model import HalfspaceLambda, Problem
from paravec.scalarlp import RATIO_TIE_TOL

PIVOT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Dictionary:
    """
    A basis of the slack augmented system together with its cached quantities.

    Attributes:
        problem: The normalized problem.
        objective_matrix: ``(n+m) x k`` objective used for the reduced costs; the problem's padded P, or P
            with an extra column for the perturbed objective.
        basis: Sorted basic indices.
        nonbasis: Sorted nonbasic indices.
        binv_b: ``B^-1 b``, one entry per basis position.
        binv_n: ``B^-1 N``, rows follow ``basis``, columns follow ``nonbasis``.
        reduced_costs: ``Z_N``, rows follow ``nonbasis``.
        xi_coeffs: ``P_B^T B^-1 b``.
    """

    problem: Problem
    objective_matrix: RealMatrix
    basis: tuple[int, ...]
    nonbasis: tuple[int, ...]
    binv_b: RealMatrix
    binv_n: RealMatrix
    reduced_costs: RealMatrix
    xi_coeffs: RealMatrix

    @property
    def key(self) -> tuple[int, ...]:
        return self.basis

    @property
    def q(self) -> int:
        return self.problem.q

    def position(self, j: int) -> int:
        try:
            return self.nonbasis.index(j)
        except ValueError as err:
            raise PreconditionViolated(f"Variable {j} is not nonbasic in {self.basis}") from err

    def row(self, i: int) -> int:
        try:
            return self.basis.index(i)
        except ValueError as err:
            raise PreconditionViolated(f"Variable {i} is not basic in {self.basis}") from err

    def column(self, j: int) -> RealMatrix:
        """``B^-1 N e^j``"""
        return self.binv_n[:, self.position(j)]

    def costs(self, j: int) -> RealMatrix:
        """``Z_N^T e^j``"""
        return self.reduced_costs[self.position(j)]

    def is_primal_feasible(self, tol: float = 1e-7) -> bool:
        return bool(np.all(self.binv_b >= -tol))

    def __repr__(self) -> str:  # pragma: no cover
        return f"Dictionary(basis={self.basis})"


@dataclass(frozen=True, eq=False)
class DirectionMaximizer:
    """
    A direction of the homogeneous problem found from an unbounded pivot column.

    ``direction`` keeps the slack coordinates; ``structural`` drops them.
    """

    direction: RealMatrix
    image: RealMatrix
    num_structural: int

    @property
    def structural(self) -> RealMatrix:
        return self.direction[: self.num_structural]


def materialize(
    p: Problem, basis: Sequence[int], objective: Optional[RealMatrix] = None, singular_tol: float = SINGULAR_TOL
) -> Dictionary:
    """
    Build the dictionary of a basis.

    Primal feasibility is not checked here.

    Args:
        p: The normalized problem.
        basis: m distinct indices of ``[A I]`` columns.
        objective: ``(n+m) x k`` objective, the padded P when omitted.
        singular_tol: Relative pivot threshold of the basis factorization.

    Raises:
        PreconditionViolated: If the index set is not a valid basis candidate.
        SingularBasis: If the basis columns are linearly dependent.
    """
    total = p.n + p.m
    key = tuple(sorted(int(i) for i in basis))
    if len(key) != p.m or len(set(key)) != p.m or (key and (key[0] < 0 or key[-1] >= total)):
        raise PreconditionViolated(f"{key} is not a set of {p.m} indices out of {total}")
    nonbasis = tuple(j for j in range(total) if j not in set(key))
    objective_matrix = p.augmented_objective if objective is None else objective

    matrix = p.augmented_matrix
    try:
        lu = lu_factorize(matrix[:, key], singular_tol)
    except SingularMatrix as err:
        raise SingularBasis(f"Basis {key} is singular") from err
    binv_b = lu_solve(lu, p.rhs)
    binv_n = lu_solve(lu, matrix[:, nonbasis])
    costs_b = objective_matrix[list(key)]
    reduced_costs = binv_n.T @ costs_b - objective_matrix[list(nonbasis)]
    xi_coeffs = costs_b.T @ binv_b
    for array in (binv_b, binv_n, reduced_costs, xi_coeffs):
        array.setflags(write=False)
    return Dictionary(
        problem=p,
        objective_matrix=objective_matrix,
        basis=key,
        nonbasis=nonbasis,
        binv_b=binv_b,
        binv_n=binv_n,
        reduced_costs=reduced_costs,
        xi_coeffs=xi_coeffs,
    )


def basic_solution(d: Dictionary) -> RealMatrix:
    """The structural part of the point with ``x_B = B^-1 b`` and ``x_N = 0``"""
    full = np.zeros(d.problem.n + d.problem.m)
    full[list(d.basis)] = d.binv_b
    return full[: d.problem.n]


def optimality_halfspace(d: Dictionary, j: int) -> HalfspaceLambda:
    """
    The parameters for which the reduced cost of nonbasic ``j`` is nonnegative.

    For a perturbed objective the extra reduced cost entry becomes the coefficient of ``mu``.
    """
    z = d.costs(j)
    q = d.q
    halfspace = HalfspaceLambda.from_costs(z[:q], d.problem.param_map.c_tilde)
    if z.size == q:
        return halfspace
    return HalfspaceLambda(normal=np.append(halfspace.normal, z[q:]), offset=halfspace.offset)


def leaving_variable(d: Dictionary, j: int, tol_pivot: float = PIVOT_TOL) -> Optional[int]:
    """
    Minimum ratio rule for entering variable ``j``.

    Returns:
        Optional[int]: The leaving basic index, smallest index among tied ratios, or None when the
        column has no entry above ``tol_pivot``.
    """
    column = d.column(j)
    eligible = np.flatnonzero(column > tol_pivot)
    if eligible.size == 0:
        return None
    ratios = d.binv_b[eligible] / column[eligible]
    best = float(np.min(ratios))
    ties = eligible[ratios <= best + RATIO_TIE_TOL * (1.0 + abs(best))]
    return min(d.basis[row] for row in ties)


def pivot(
    d: Dictionary, j: int, i: int, tol_pivot: float = PIVOT_TOL, singular_tol: float = SINGULAR_TOL
) -> Dictionary:
    """
    Exchange entering ``j`` and leaving ``i`` and rematerialize.

    Raises:
        PreconditionViolated: If ``j`` is not nonbasic, ``i`` not basic or the pivot entry not positive.
        SingularBasis: On numerical failure.
    """
    entry = d.binv_n[d.row(i), d.position(j)]
    if entry <= tol_pivot:
        raise PreconditionViolated(f"Pivot entry for ({j}, {i}) is {entry:.3e}, not positive")
    basis = [k for k in d.basis if k != i] + [j]
    return materialize(d.problem, basis, d.objective_matrix, singular_tol)


def extract_direction(d: Dictionary, j: int, tol_pivot: float = PIVOT_TOL) -> DirectionMaximizer:
    """
    The direction ``x_B = -B^-1 N e^j``, ``x_j = 1`` of an unbounded entering column, with image ``-Z_N^T e^j``.

    Raises:
        PreconditionViolated: If the column has a positive entry.
    """
    column = d.column(j)
    if np.any(column > tol_pivot):
        raise PreconditionViolated(f"Column of {j} has a positive entry, it has a leaving variable")
    direction = np.zeros(d.problem.n + d.problem.m)
    direction[list(d.basis)] = -column
    direction[j] = 1.0
    return DirectionMaximizer(direction=direction, image=-d.costs(j)[: d.q], num_structural=d.problem.n)
