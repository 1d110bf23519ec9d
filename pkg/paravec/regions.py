"""
Optimality regions

The optimality region of a dictionary is the intersection of the halfspaces of its nonbasic variables
with the parameter domain. :func:`defining_set` keeps a non redundant subfamily of those halfspaces by
solving one small LP per nonbasic variable, dropping a halfspace as soon as it is found redundant.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from paravec.config import Tolerances
from paravec.densela import RealMatrix
from paravec.dictionary import Dictionary, optimality_halfspace
from paravec.model import HalfspaceLambda, ParamMap
from paravec.scalarlp import LpStatus, RowKind, ScalarLp, solve_lp

logger = logging.getLogger(__name__)

WITNESS_CAP = 1.0


@dataclass(frozen=True, eq=False)
class DefiningSetResult:
    """
    Classification of the nonbasic variables of a dictionary.

    Attributes:
        defining: Entering candidates, sorted.
        redundant: The rest of the nonbasis, sorted.
        halfspaces: Halfspace of every nonbasic variable.
        region_empty_interior: True when no point of the region in the interior of the domain was found.
        witness: Such a point, when found.
        lp_count: Number of LPs solved.
    """

    defining: tuple[int, ...]
    redundant: tuple[int, ...]
    halfspaces: dict[int, HalfspaceLambda]
    region_empty_interior: bool
    witness: Optional[RealMatrix]
    lp_count: int

    def region(self, domain: Sequence[HalfspaceLambda]) -> list[HalfspaceLambda]:
        """The defining halfspaces followed by the domain halfspaces"""
        return [self.halfspaces[j] for j in self.defining] + list(domain)


def _rows(halfspaces: Sequence[HalfspaceLambda]) -> tuple[RealMatrix, RealMatrix]:
    normals = np.array([h.normal for h in halfspaces], dtype=np.float64)
    offsets = np.array([h.offset for h in halfspaces], dtype=np.float64)
    return normals, offsets


def _excess(target: HalfspaceLambda, others: Sequence[HalfspaceLambda], tol: Tolerances) -> tuple[LpStatus, float]:
    """
    How far the other halfspaces allow to go past ``target``: max of ``-(a^T lambda + beta)`` over their
    intersection.
    """
    dim = target.normal.size
    normals, offsets = _rows(others)
    lp = ScalarLp.build(
        objective=-target.normal,
        constraint_matrix=normals.reshape(len(others), dim),
        rhs=-offsets,
        row_kinds=[RowKind.GE] * len(others),
        free=[True] * dim,
    )
    outcome = solve_lp(lp, tol)
    if outcome.is_optimal:
        return outcome.status, float(outcome.objective_value) - target.offset
    return outcome.status, np.inf if outcome.status is LpStatus.UNBOUNDED else -np.inf


def defining_indices(
    candidates: dict[int, HalfspaceLambda],
    domain: Sequence[HalfspaceLambda],
    tolerances: Optional[Tolerances] = None,
) -> tuple[list[int], list[int]]:
    """
    Split ``candidates`` into defining and redundant indices.

    Candidates are tested in ascending index order, each against the domain and every candidate not yet
    found redundant, so among coinciding halfspaces the one with the largest index stays defining.

    Returns:
        tuple[list[int], list[int]]: The defining and the redundant indices, both sorted.
    """
    tol = tolerances or Tolerances()
    redundant: set[int] = set()
    for j in sorted(candidates):
        others = [h for k, h in candidates.items() if k != j and k not in redundant] + list(domain)
        status, excess = _excess(candidates[j], others, tol)
        if status is LpStatus.INFEASIBLE:
            logger.warning("Empty region while testing variable %d", j)
        if excess <= tol.defining:
            redundant.add(j)
        verdict = "redundant" if j in redundant else "defining"
        logger.debug("Variable %d: %s (%s, excess %.3e)", j, verdict, status.value, excess)
    defining = sorted(j for j in candidates if j not in redundant)
    return defining, sorted(redundant)


def region_interior_witness(
    halfspaces: Sequence[HalfspaceLambda],
    tol_def: float = 1e-7,
    strict: Optional[Sequence[bool]] = None,
    tolerances: Optional[Tolerances] = None,
) -> Optional[RealMatrix]:
    """
    A Chebyshev center style interior point.

    Solves max ``s`` subject to ``a^T lambda + beta >= s ||a||`` for every halfspace (only for the ones flagged
    in ``strict`` when given, the others are kept as plain inequalities) and ``s <= 1``.

    Returns:
        Optional[RealMatrix]: The point when ``s > tol_def``, None otherwise.
    """
    if not halfspaces:
        return None
    dim = halfspaces[0].normal.size
    strict = [True] * len(halfspaces) if strict is None else list(strict)
    normals, offsets = _rows(halfspaces)
    margins = np.where(strict, np.linalg.norm(normals, axis=1), 0.0)
    matrix = np.hstack([normals, -margins[:, None]])
    cap = np.zeros(dim + 1)
    cap[-1] = 1.0
    lp = ScalarLp.build(
        objective=cap,
        constraint_matrix=np.vstack([matrix, cap]),
        rhs=np.append(-offsets, WITNESS_CAP),
        row_kinds=[RowKind.GE] * len(halfspaces) + [RowKind.LE],
        free=[True] * dim + [False],
    )
    outcome = solve_lp(lp, tolerances)
    if not outcome.is_optimal or outcome.objective_value <= tol_def:
        return None
    return outcome.solution[:dim]


def defining_set(d: Dictionary, pm: ParamMap, tolerances: Optional[Tolerances] = None) -> DefiningSetResult:
    """
    The entering candidates of a dictionary: the nonbasic variables whose halfspaces define its optimality
    region within Lambda.
    """
    tol = tolerances or Tolerances()
    halfspaces = {j: optimality_halfspace(d, j) for j in d.nonbasis}
    domain = list(pm.cone_halfspaces)
    defining, redundant = defining_indices(halfspaces, domain, tol)
    region = [halfspaces[j] for j in defining] + domain
    strict = [False] * len(defining) + [True] * len(domain)
    witness = region_interior_witness(region, tol.defining, strict=strict, tolerances=tol)
    if witness is None:
        logger.debug("Region of %s has no point in the interior of Lambda", d.basis)
    return DefiningSetResult(
        defining=tuple(defining),
        redundant=tuple(redundant),
        halfspaces=halfspaces,
        region_empty_interior=witness is None,
        witness=witness,
        lp_count=len(halfspaces) + 1,
    )
