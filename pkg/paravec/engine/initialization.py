"""
Initial dictionaries

Three ways to find a primal feasible dictionary whose optimality region meets the interior of Lambda:

* :func:`init_via_p0` solves an auxiliary LP for a weight ``w0`` in the interior of the dual cone for which
  the weighted sum problem is bounded, then takes an optimal basis of that problem.
* :func:`init_via_weight` starts from a given weight.
* :func:`init_perturbation` penalizes the objective with ``-mu * 1^T x`` and walks the ``(lambda, mu)``
  regions from the slack basis down to ``mu = 0``.
"""

import logging
from typing import Optional

import numpy as np
import numpy.typing as npt

from paravec.config import Tolerances
from paravec.densela import SINGULAR_TOL, RealMatrix
from paravec.dictionary import Dictionary, leaving_variable, materialize, optimality_halfspace, pivot
from paravec.exceptions import (
    DimensionMismatch,
    InfeasibleProblem,
    IterationLimitExceeded,
    NoSolution,
    NumericalBreakdown,
    PreconditionViolated,
    ScalarUnbounded,
)
from paravec.model import HalfspaceLambda, ParamMap, Problem
from paravec.regions import defining_indices, region_interior_witness
from paravec.scalarlp import LpStatus, RowKind, ScalarLp, feasible_basis, solve_lp

logger = logging.getLogger(__name__)


def weighted_sum_lp(p: Problem, w: npt.ArrayLike) -> ScalarLp:
    """maximize ``w^T P^T x`` subject to ``A x <= b``, ``x >= 0``"""
    return ScalarLp.build(p.objective @ np.asarray(w, dtype=np.float64), p.constraint_matrix, p.rhs)


def _dictionary_for_weight(p: Problem, w: RealMatrix, tol: Tolerances) -> Dictionary:
    outcome = solve_lp(weighted_sum_lp(p, w), tol)
    if outcome.status is LpStatus.INFEASIBLE:
        raise InfeasibleProblem("The feasible set is empty")
    if outcome.status is LpStatus.UNBOUNDED:
        raise ScalarUnbounded(f"The weighted sum problem is unbounded for w = {w.tolist()}")
    if outcome.basis is None or len(outcome.basis) != p.m:
        raise NumericalBreakdown("The weighted sum problem did not return a full basis")
    d0 = materialize(p, outcome.basis, singular_tol=tol.singular)
    if not d0.is_primal_feasible(tol.feasibility):
        raise NumericalBreakdown(f"Optimal basis {d0.basis} is not primal feasible")
    logger.debug("Initial basis %s from w = %s", d0.basis, w)
    return d0


def p0_weight(p: Problem, tolerances: Optional[Tolerances] = None) -> RealMatrix:
    """
    The weight ``w0 = w* / c^T w*`` from an optimal solution ``(u*, w*)`` of

        minimize b^T u  subject to  A^T u - P w >= 0,  Y^T w >= 1,  u >= 0.

    The LP is written in the nonbasic variables of a Phase 1 feasible dictionary, whose right hand side is
    nonnegative. For b >= 0 that is the slack basis and the LP above; otherwise the objective shifts by
    ``w^T xi`` and ``w*`` may differ from the one in the original variables, while still lying in the
    interior of the dual cone with a bounded weighted sum.

    Raises:
        InfeasibleProblem: If the feasible set is empty.
        NoSolution: If the auxiliary LP is infeasible.
    """
    tol = tolerances or Tolerances()
    basis = feasible_basis(ScalarLp.build(np.zeros(p.n), p.constraint_matrix, p.rhs), tol)
    if basis is None:
        raise InfeasibleProblem("The feasible set is empty")
    start = materialize(p, basis, singular_tol=tol.singular)
    # x_B = B^-1 b - B^-1 N x_N >= 0 and P^T x = xi - Z_N^T x_N
    matrix, rhs, reduced = start.binv_n, np.maximum(start.binv_b, 0.0), start.reduced_costs
    m, q = p.m, p.q
    generators = p.cone.generators
    lp = ScalarLp.build(
        objective=np.concatenate([-rhs, np.zeros(q)]),
        constraint_matrix=np.vstack(
            [
                np.hstack([matrix.T, reduced]),
                np.hstack([np.zeros((generators.shape[1], m)), generators.T]),
            ]
        ),
        rhs=np.concatenate([np.zeros(matrix.shape[1]), np.ones(generators.shape[1])]),
        row_kinds=[RowKind.GE] * (matrix.shape[1] + generators.shape[1]),
        free=[False] * m + [True] * q,
    )
    outcome = solve_lp(lp, tol)
    if outcome.status is LpStatus.INFEASIBLE:
        raise NoSolution("The lower image has no vertex, the problem has no solution")
    if outcome.status is LpStatus.UNBOUNDED:
        raise NumericalBreakdown("The weight LP is unbounded although its right hand side is nonnegative")
    w_star = outcome.solution[m:]
    logger.debug("Weight LP solved with w* = %s", w_star)
    return w_star / float(p.interior_point @ w_star)


def init_via_p0(p: Problem, tolerances: Optional[Tolerances] = None) -> Dictionary:
    """Initial dictionary from the weight of :func:`p0_weight`"""
    tol = tolerances or Tolerances()
    return _dictionary_for_weight(p, p0_weight(p, tol), tol)


def init_via_weight(p: Problem, w0: npt.ArrayLike, tolerances: Optional[Tolerances] = None) -> Dictionary:
    """
    Initial dictionary from an optimal basis of the weighted sum problem for ``w0``.

    A weight on the boundary of the dual cone is accepted only when the optimality region of the basis
    found meets the interior of Lambda; otherwise this falls back to :func:`init_via_p0`.

    Raises:
        DimensionMismatch: If ``w0`` does not have q entries.
        PreconditionViolated: If ``w0`` is not a nonzero element of the dual cone.
        ScalarUnbounded: If the weighted sum problem is unbounded.
        InfeasibleProblem: If the feasible set is empty.
    """
    tol = tolerances or Tolerances()
    w = np.asarray(w0, dtype=np.float64).reshape(-1)
    if w.size != p.q:
        raise DimensionMismatch(f"The weight has {w.size} entries, expected {p.q}")
    slack = p.cone.generators.T @ w
    if not np.any(w) or np.any(slack < -tol.geometry):
        raise PreconditionViolated(f"{w.tolist()} is not a nonzero element of the dual cone")
    w = w / float(p.interior_point @ w)
    d0 = _dictionary_for_weight(p, w, tol)
    if np.min(p.cone.generators.T @ w) <= tol.interior:
        domain = list(p.param_map.cone_halfspaces)
        region = [optimality_halfspace(d0, j) for j in d0.nonbasis] + domain
        strict = [False] * len(d0.nonbasis) + [True] * len(domain)
        if region_interior_witness(region, tol.defining, strict=strict, tolerances=tol) is None:
            logger.info("Region of %s misses the interior of Lambda, using the weight LP instead", d0.basis)
            return init_via_p0(p, tol)
    return d0


def perturbed_objective(p: Problem) -> RealMatrix:
    """``[P, -1]`` padded with zero rows for the slacks"""
    penalty = np.concatenate([-np.ones(p.n), np.zeros(p.m)])
    return np.hstack([p.augmented_objective, penalty[:, None]])


def perturbed_dictionary(p: Problem, basis: tuple[int, ...], singular_tol: float = SINGULAR_TOL) -> Dictionary:
    """Dictionary of the penalized objective ``(w(lambda)^T P^T - mu 1^T) x``"""
    return materialize(p, basis, perturbed_objective(p), singular_tol)


def perturbed_domain(pm: ParamMap) -> list[HalfspaceLambda]:
    """Lambda x R+ as halfspaces in ``(lambda, mu)``"""
    domain = [HalfspaceLambda(np.append(h.normal, 0.0), h.offset) for h in pm.cone_halfspaces]
    mu = np.zeros(pm.dim + 1)
    mu[-1] = 1.0
    return domain + [HalfspaceLambda(mu, 0.0)]


def perturbed_region(d: Dictionary) -> dict[int, HalfspaceLambda]:
    """Halfspace in ``(lambda, mu)`` of every nonbasic variable of a perturbed dictionary"""
    return {j: optimality_halfspace(d, j) for j in d.nonbasis}


def _meets_zero_level(region: dict[int, HalfspaceLambda], pm: ParamMap, tol: Tolerances) -> bool:
    """Whether the region contains a point ``(lambda, 0)`` with lambda in the interior of Lambda"""
    at_zero = [HalfspaceLambda(h.normal[:-1], h.offset) for h in region.values()]
    domain = list(pm.cone_halfspaces)
    strict = [False] * len(at_zero) + [True] * len(domain)
    return region_interior_witness(at_zero + domain, tol.defining, strict=strict, tolerances=tol) is not None


def init_perturbation(
    p: Problem, tolerances: Optional[Tolerances] = None, max_dictionaries: int = 100000
) -> Dictionary:
    """
    Initial dictionary from the perturbed problem.

    Explores the ``(lambda, mu)`` regions like the main algorithm, starting from the slack basis, until a
    region reaches ``mu = 0`` inside Lambda; returns that basis for the unperturbed objective.

    Raises:
        PreconditionViolated: If b has a negative entry.
        NoSolution: If no region reaches ``mu = 0``.
    """
    tol = tolerances or Tolerances()
    if np.any(p.rhs < 0):
        raise PreconditionViolated("The perturbation method needs b >= 0")
    pm = p.param_map
    domain = perturbed_domain(pm)

    def enter(d: Dictionary, explored: set[tuple[int, int]]) -> Optional[Dictionary]:
        region = perturbed_region(d)
        if _meets_zero_level(region, pm, tol):
            return d
        defining, _ = defining_indices(region, domain, tol)
        boundary[d.basis] = (d, defining, explored)
        return None

    boundary: dict[tuple[int, ...], tuple[Dictionary, list[int], set[tuple[int, int]]]] = {}
    visited: set[tuple[int, ...]] = set()
    found = enter(perturbed_dictionary(p, tuple(range(p.n, p.n + p.m)), tol.singular), set())
    while found is None and boundary:
        key = min(boundary)
        d, defining, explored = boundary[key]
        for j in defining:
            i = leaving_variable(d, j, tol.pivot)
            if i is None or (j, i) in explored:
                continue
            new_key = tuple(sorted(set(key) - {i} | {j}))
            if new_key in visited:
                continue
            if new_key in boundary:
                boundary[new_key][2].add((i, j))
                continue
            found = enter(pivot(d, j, i, tol.pivot, tol.singular), {(i, j)})
            if found is not None:
                break
        del boundary[key]
        visited.add(key)
        if len(visited) + len(boundary) > max_dictionaries:
            raise IterationLimitExceeded(f"Perturbation phase exceeded {max_dictionaries} dictionaries")
    if found is None:
        raise NoSolution("No region of the perturbed problem reaches mu = 0, the problem has no solution")
    logger.debug("Perturbation phase reached basis %s after %d dictionaries", found.basis, len(visited) + 1)
    return materialize(p, found.basis, singular_tol=tol.singular)
