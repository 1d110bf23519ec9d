"""Removal of redundant generators from a solution"""

import logging
from typing import Optional

import numpy as np

from paravec.config import Tolerances
from paravec.densela import RealMatrix
from paravec.engine.state import Solution
from paravec.scalarlp import LpStatus, RowKind, ScalarLp, solve_lp

logger = logging.getLogger(__name__)


def is_generated(
    target: RealMatrix, points: RealMatrix, rays: RealMatrix, tolerances: Optional[Tolerances] = None
) -> bool:
    """
    Whether ``target`` lies in ``conv(points) + cone(rays)`` (or in ``cone(rays)`` when no point is given).

    Points and rays are given one per row.
    """
    q = target.size
    columns = np.vstack([points.reshape(-1, q), rays.reshape(-1, q)]).T
    matrix, rhs = columns, target
    if points.shape[0]:
        convex = np.concatenate([np.ones(points.shape[0]), np.zeros(rays.shape[0])])
        matrix, rhs = np.vstack([columns, convex]), np.append(target, 1.0)
    lp = ScalarLp.build(
        objective=np.zeros(matrix.shape[1]),
        constraint_matrix=matrix,
        rhs=rhs,
        row_kinds=[RowKind.EQ] * matrix.shape[0],
    )
    return solve_lp(lp, tolerances).status is not LpStatus.INFEASIBLE


def filter_generators(sol: Solution, tolerances: Optional[Tolerances] = None) -> Solution:
    """
    Greedily drop points and directions whose images are generated by the remaining ones.

    Points are tested in insertion order against the other remaining points, all direction images and the
    negated cone generators, and at least one point is always kept. Directions are then tested against the
    other remaining directions and the negated cone generators. The lower image is unchanged.
    """
    tol = tolerances or Tolerances()
    negated_cone = -sol.cone_generators.T
    rays = np.vstack([sol.direction_images, negated_cone])

    kept = list(range(sol.points.shape[0]))
    for k in list(kept):
        others = [i for i in kept if i != k]
        if others and is_generated(sol.point_images[k], sol.point_images[others], rays, tol):
            kept.remove(k)
            logger.debug("Point %d is redundant", k)

    kept_directions = list(range(sol.directions.shape[0]))
    for k in list(kept_directions):
        others = [i for i in kept_directions if i != k]
        candidates = np.vstack([sol.direction_images[others], negated_cone])
        if is_generated(sol.direction_images[k], np.zeros((0, sol.point_images.shape[1])), candidates, tol):
            kept_directions.remove(k)
            logger.debug("Direction %d is redundant", k)

    logger.info(
        "Kept %d of %d points and %d of %d directions",
        len(kept),
        sol.points.shape[0],
        len(kept_directions),
        sol.directions.shape[0],
    )
    return sol.with_points(kept).with_directions(kept_directions)
