"""
Scalar LP solver

A dense two-phase primal simplex on a tableau, using Bland's smallest index rule for both the entering
and the leaving variable. Every problem is a maximization. Rows can be ``<=``, ``=`` or ``>=`` and
variables either nonnegative or free (free variables are split into a difference of two nonnegative
columns).

The column space of the tableau is: the structural variables, then the negative copies of the free
variables, then one logical variable per inequality row (a slack for ``<=``, a surplus for ``>=``), in row
order. For an all ``<=`` problem without free variables this is exactly ``[A I]``, so the basis reported
by :func:`solve_lp` indexes the slack augmented constraint matrix.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt

from paravec.config import Tolerances
from paravec.densela import RealMatrix, as_matrix
from paravec.exceptions import DimensionMismatch, NumericalBreakdown

logger = logging.getLogger(__name__)

RATIO_TIE_TOL = 1e-12


class RowKind(Enum):
    """Relation of a constraint row"""

    LE = "<="
    EQ = "="
    GE = ">="


class LpStatus(Enum):
    """Outcome of a scalar LP"""

    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class ScalarLp:
    """maximize ``objective @ x`` subject to ``constraint_matrix @ x (row_kinds) rhs``"""

    objective: RealMatrix
    constraint_matrix: RealMatrix
    rhs: RealMatrix
    row_kinds: tuple[RowKind, ...]
    free: tuple[bool, ...]

    @classmethod
    def build(
        cls,
        objective: npt.ArrayLike,
        constraint_matrix: npt.ArrayLike,
        rhs: npt.ArrayLike,
        row_kinds: Optional[Sequence[RowKind]] = None,
        free: Optional[Sequence[bool]] = None,
    ) -> "ScalarLp":
        """
        Validate and build an LP.

        Args:
            objective: Cost vector, one entry per variable.
            constraint_matrix: One row per constraint.
            rhs: Right hand side, one entry per constraint.
            row_kinds: Relation per row, ``<=`` for every row when omitted.
            free: Per variable flag, True for a free variable. Nonnegative variables when omitted.

        Raises:
            DimensionMismatch: If the sizes do not agree or the data is not finite.
        """
        c = as_matrix(objective, name="objective", ndim=1)
        b = as_matrix(rhs, name="rhs", ndim=1)
        raw = np.asarray(constraint_matrix, dtype=np.float64)
        a = as_matrix(raw.reshape(0, c.size) if raw.size == 0 else raw, name="constraint_matrix")
        if a.shape != (b.size, c.size):
            raise DimensionMismatch(f"constraint_matrix has shape {a.shape}, expected ({b.size}, {c.size})")
        kinds = tuple(row_kinds) if row_kinds is not None else (RowKind.LE,) * b.size
        free_flags = tuple(bool(flag) for flag in free) if free is not None else (False,) * c.size
        if len(kinds) != b.size:
            raise DimensionMismatch(f"Got {len(kinds)} row kinds for {b.size} rows")
        if len(free_flags) != c.size:
            raise DimensionMismatch(f"Got {len(free_flags)} variable bounds for {c.size} variables")
        return cls(objective=c, constraint_matrix=a, rhs=b, row_kinds=kinds, free=free_flags)

    @property
    def num_vars(self) -> int:
        return self.objective.size

    @property
    def num_rows(self) -> int:
        return self.rhs.size


@dataclass(frozen=True)
class LpOutcome:
    """Result of :func:`solve_lp`"""

    status: LpStatus
    solution: Optional[RealMatrix] = None
    objective_value: Optional[float] = None
    certificate_ray: Optional[RealMatrix] = None
    basis: Optional[tuple[int, ...]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass
class _Tableau:
    """Mutable working state of one solve"""

    rows: RealMatrix
    basis: list[int]
    num_structural: int
    num_columns: int
    free_columns: list[int]
    artificial_start: int
    iterations: int = 0

    @property
    def rhs(self) -> RealMatrix:
        return self.rows[:, -1]

    def reduced_costs(self, costs: RealMatrix) -> RealMatrix:
        width = costs.size
        return costs - costs[self.basis] @ self.rows[:, :width]

    def pivot(self, row: int, col: int) -> None:
        self.rows[row] /= self.rows[row, col]
        column = self.rows[:, col].copy()
        column[row] = 0.0
        self.rows -= np.outer(column, self.rows[row])
        self.basis[row] = col
        self.iterations += 1


def _setup(lp: ScalarLp) -> _Tableau:
    a = lp.constraint_matrix
    free_columns = [j for j, is_free in enumerate(lp.free) if is_free]
    structural = np.hstack([a, -a[:, free_columns]]) if free_columns else a.copy()
    num_structural = structural.shape[1]

    inequality_rows = [i for i, kind in enumerate(lp.row_kinds) if kind is not RowKind.EQ]
    logical = np.zeros((lp.num_rows, len(inequality_rows)))
    for position, row in enumerate(inequality_rows):
        logical[row, position] = 1.0 if lp.row_kinds[row] is RowKind.LE else -1.0

    body = np.hstack([structural, logical])
    rhs = lp.rhs.copy()
    flip = rhs < 0
    body[flip] *= -1.0
    rhs[flip] *= -1.0

    basis: list[int] = []
    needs_artificial: list[int] = []
    row_logical = {row: num_structural + position for position, row in enumerate(inequality_rows)}
    for row in range(lp.num_rows):
        col = row_logical.get(row)
        if col is not None and body[row, col] > 0:
            basis.append(col)
        else:
            basis.append(-1)
            needs_artificial.append(row)

    artificial_start = body.shape[1]
    artificial = np.zeros((lp.num_rows, len(needs_artificial)))
    for position, row in enumerate(needs_artificial):
        artificial[row, position] = 1.0
        basis[row] = artificial_start + position

    rows = np.hstack([body, artificial, rhs[:, None]])
    return _Tableau(
        rows=rows,
        basis=basis,
        num_structural=num_structural,
        num_columns=artificial_start + len(needs_artificial),
        free_columns=free_columns,
        artificial_start=artificial_start,
    )


def _iteration_cap(tab: _Tableau) -> int:
    return 50 * (len(tab.basis) + tab.num_columns) + 1000


def _run_simplex(tab: _Tableau, costs: RealMatrix, tol: Tolerances) -> Optional[int]:
    """
    Iterate Bland's rule until optimal.

    Returns:
        Optional[int]: The entering column proving unboundedness, or None when optimal.
    """
    cap = tab.iterations + _iteration_cap(tab)
    while True:
        if tab.iterations > cap:
            raise NumericalBreakdown(f"Simplex did not terminate after {tab.iterations} iterations")
        reduced = tab.reduced_costs(costs)
        reduced[tab.basis] = 0.0
        candidates = np.flatnonzero(reduced > tol.optimality)
        if candidates.size == 0:
            return None
        col = int(candidates[0])
        column = tab.rows[:, col]
        eligible = np.flatnonzero(column > tol.pivot)
        if eligible.size == 0:
            return col
        ratios = tab.rhs[eligible] / column[eligible]
        best = float(np.min(ratios))
        ties = eligible[ratios <= best + RATIO_TIE_TOL * (1.0 + abs(best))]
        row = int(min(ties, key=lambda r: tab.basis[r]))
        tab.pivot(row, col)


def _phase_one(tab: _Tableau, tol: Tolerances) -> bool:
    """Drive the artificial variables to zero; returns False when the LP is infeasible"""
    if tab.artificial_start == tab.num_columns:
        return True
    costs = np.zeros(tab.num_columns)
    costs[tab.artificial_start :] = -1.0
    _run_simplex(tab, costs, tol)
    infeasibility = float(np.sum(tab.rhs[[r for r, col in enumerate(tab.basis) if col >= tab.artificial_start]]))
    logger.debug("Phase 1 finished after %d iterations, infeasibility %.3e", tab.iterations, infeasibility)
    if infeasibility > tol.feasibility * (1.0 + float(np.max(np.abs(tab.rhs), initial=0.0))):
        return False

    redundant = []
    for row, col in enumerate(tab.basis):
        if col < tab.artificial_start:
            continue
        entries = np.abs(tab.rows[row, : tab.artificial_start])
        replacement = np.flatnonzero(entries > tol.pivot)
        if replacement.size:
            tab.pivot(row, int(replacement[0]))
        else:
            redundant.append(row)
    if redundant:
        logger.debug("Dropping %d redundant rows", len(redundant))
        keep = [row for row in range(len(tab.basis)) if row not in redundant]
        tab.rows = tab.rows[keep]
        tab.basis = [tab.basis[row] for row in keep]
    tab.rows = np.hstack([tab.rows[:, : tab.artificial_start], tab.rows[:, -1:]])
    tab.num_columns = tab.artificial_start
    return True


def _expanded_costs(lp: ScalarLp, tab: _Tableau) -> RealMatrix:
    costs = np.zeros(tab.num_columns)
    costs[: lp.num_vars] = lp.objective
    costs[lp.num_vars : tab.num_structural] = -lp.objective[tab.free_columns]
    return costs


def _collapse(lp: ScalarLp, tab: _Tableau, expanded: RealMatrix) -> RealMatrix:
    """Map a vector over the tableau columns back to the original variables"""
    x = expanded[: lp.num_vars].copy()
    x[tab.free_columns] -= expanded[lp.num_vars : tab.num_structural]
    return x


def _check_residual(lp: ScalarLp, x: RealMatrix, tol: Tolerances) -> None:
    lhs = lp.constraint_matrix @ x
    scale = 1.0 + float(np.max(np.abs(lp.rhs), initial=0.0)) + float(np.max(np.abs(lhs), initial=0.0))
    violation = 0.0
    for kind, value, bound in zip(lp.row_kinds, lhs, lp.rhs):
        if kind is RowKind.LE:
            violation = max(violation, value - bound)
        elif kind is RowKind.GE:
            violation = max(violation, bound - value)
        else:
            violation = max(violation, abs(value - bound))
    bounded = np.logical_not(lp.free)
    if bounded.any():
        violation = max(violation, float(np.max(-x[bounded])))
    if violation > 10 * tol.feasibility * scale:
        raise NumericalBreakdown(f"Optimal solution violates the constraints by {violation:.3e}")


def solve_lp(lp: ScalarLp, tolerances: Optional[Tolerances] = None) -> LpOutcome:
    """
    Solve a scalar LP with the two-phase simplex method.

    Args:
        lp: The LP, always a maximization.
        tolerances: Feasibility, pivot and reduced cost tolerances.

    Returns:
        LpOutcome: The status with the solution, the optimal basis or an improving ray.

    Raises:
        NumericalBreakdown: If the iterations do not terminate or the result is not feasible.
    """
    tol = tolerances or Tolerances()
    tab = _setup(lp)
    if not _phase_one(tab, tol):
        return LpOutcome(status=LpStatus.INFEASIBLE)

    costs = _expanded_costs(lp, tab)
    entering = _run_simplex(tab, costs, tol)
    logger.debug("Simplex finished after %d iterations", tab.iterations)

    if entering is not None:
        direction = np.zeros(tab.num_columns)
        direction[entering] = 1.0
        direction[tab.basis] = -tab.rows[:, entering]
        return LpOutcome(status=LpStatus.UNBOUNDED, certificate_ray=_collapse(lp, tab, direction))

    expanded = np.zeros(tab.num_columns)
    expanded[tab.basis] = tab.rhs
    x = _collapse(lp, tab, expanded)
    _check_residual(lp, x, tol)
    return LpOutcome(
        status=LpStatus.OPTIMAL,
        solution=x,
        objective_value=float(lp.objective @ x),
        basis=tuple(sorted(tab.basis)),
    )


def feasible_basis(lp: ScalarLp, tolerances: Optional[Tolerances] = None) -> Optional[tuple[int, ...]]:
    """
    Find a primal feasible basis of the constraint system with Phase 1.

    For ``<=`` rows with a nonnegative right hand side this is the slack basis.

    Returns:
        Optional[tuple[int, ...]]: The sorted basis column indices, or None when the system is infeasible.
    """
    tol = tolerances or Tolerances()
    tab = _setup(lp)
    if not _phase_one(tab, tol):
        return None
    return tuple(sorted(tab.basis))
