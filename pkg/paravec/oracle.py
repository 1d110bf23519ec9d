"""
Independent verification of solutions

Everything here is brute force: weighted sum LPs on a grid of parameters, exhaustive basis enumeration
for tiny instances and sampled support functions. Nothing reuses the exploration of the engine.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np
import numpy.typing as npt

from paravec.config import Tolerances
from paravec.densela import RealMatrix, lu_factorize, lu_solve
from paravec.engine.initialization import weighted_sum_lp
from paravec.engine.state import Solution, SolutionStatus
from paravec.exceptions import SingularMatrix, TooLarge, UnboundedParameterSet
from paravec.model import Cone, HalfspaceLambda, ParamMap, Problem, normalize_orientation
from paravec.scalarlp import LpStatus, RowKind, ScalarLp, solve_lp

logger = logging.getLogger(__name__)

GAP_TOL = 1e-6
RAY_TOL = 1e-8
COVER_TOL = 1e-7
MAX_ENUMERATION = 18

Generators = tuple[RealMatrix, RealMatrix]


@dataclass
class Mismatch:
    """One parameter where the solution disagrees with the scalarization"""

    lam: RealMatrix
    expected: str
    got: str


@dataclass
class OracleReport:
    """Findings of a check; ``ok`` when there is no mismatch"""

    grid_points_checked: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    max_abs_gap: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _bounding_box(
    halfspaces: tuple[HalfspaceLambda, ...], tolerances: Optional[Tolerances] = None
) -> tuple[RealMatrix, RealMatrix]:
    dim = halfspaces[0].normal.size
    normals = np.array([h.normal for h in halfspaces])
    offsets = np.array([h.offset for h in halfspaces])
    lower, upper = np.zeros(dim), np.zeros(dim)
    for k in range(dim):
        for sign, bound in ((1.0, upper), (-1.0, lower)):
            objective = np.zeros(dim)
            objective[k] = sign
            lp = ScalarLp.build(objective, normals, -offsets, [RowKind.GE] * len(halfspaces), [True] * dim)
            outcome = solve_lp(lp, tolerances)
            if not outcome.is_optimal:
                raise UnboundedParameterSet("The parameter set is not bounded")
            bound[k] = outcome.solution[k]
    return lower, upper


def _strictly_inside(pm: ParamMap, lam: RealMatrix) -> bool:
    return all(h.value(lam) > 1e-12 for h in pm.cone_halfspaces)


def lambda_grid(
    pm: ParamMap, density: int, seed: int = 0, tolerances: Optional[Tolerances] = None
) -> list[RealMatrix]:
    """
    Cell centered grid points of the bounding box of Lambda that lie in its interior.

    Parameter spaces of dimension three or more are sampled at random instead, ``density**2`` draws.
    """
    lower, upper = _bounding_box(pm.cone_halfspaces, tolerances)
    ticks = [lower[k] + (np.arange(density) + 0.5) / density * (upper[k] - lower[k]) for k in range(pm.dim)]
    if pm.dim == 1:
        candidates = [np.array([t]) for t in ticks[0]]
    elif pm.dim == 2:
        candidates = [np.array([a, b]) for a in ticks[0] for b in ticks[1]]
    else:
        rng = np.random.default_rng(seed)
        candidates = list(rng.uniform(lower, upper, size=(density * density, pm.dim)))
    return [lam for lam in candidates if _strictly_inside(pm, lam)]


def sample_lambdas(
    pm: ParamMap, count: int, rng: np.random.Generator, tolerances: Optional[Tolerances] = None
) -> list[RealMatrix]:
    """``count`` uniform samples from the interior of Lambda by rejection from its bounding box"""
    lower, upper = _bounding_box(pm.cone_halfspaces, tolerances)
    samples: list[RealMatrix] = []
    attempts = 0
    while len(samples) < count and attempts < 1000 * count:
        lam = rng.uniform(lower, upper)
        attempts += 1
        if _strictly_inside(pm, lam):
            samples.append(lam)
    return samples


def sample_dual_weights(cone: Cone, count: int, rng: np.random.Generator) -> list[RealMatrix]:
    """Uniform samples of ``{w in C+ : c^T w = 1}``, c the mean generator scaled to last coordinate 1"""
    c = cone.mean_generator()
    if c[-1] == 0.0:
        c = c + next(y for y in cone.generators.T if y[-1] != 0.0)
    sign = 1.0 if c[-1] > 0 else -1.0
    signed_cone = cone if sign > 0 else cone.negated()
    pm = ParamMap.from_cone(signed_cone, sign * c / abs(c[-1]))
    return [sign * pm.w(lam) for lam in sample_lambdas(pm, count, rng)]


def _images(p: Problem, rows: RealMatrix) -> RealMatrix:
    return rows.reshape(-1, p.n) @ p.objective


def _covered(sol: Solution, lam: RealMatrix) -> bool:
    """Whether ``lam`` lies in a cell or strictly beyond an unbounded cut"""
    if any(cell.contains(lam, COVER_TOL) for cell in sol.cells):
        return True
    return any(cut.halfspace.value(lam) < COVER_TOL for cut in sol.unbounded_cuts)


def grid_scalarization_check(
    p: Problem, sol: Solution, grid_density: int, tolerances: Optional[Tolerances] = None
) -> OracleReport:
    """
    Compare the solution with the weighted sum problem on a grid of parameters.

    Where the scalarization is optimal, its value must equal the best point of the solution and no
    direction may improve it; where it is unbounded, some direction must improve. A solution that carries
    cells must also cover every parameter with a cell or put it beyond one of its unbounded cuts.
    """
    tol = tolerances or Tolerances()
    report = OracleReport()
    normalized = normalize_orientation(p, tol)
    pm = normalized.param_map
    point_images = _images(normalized, sol.points)
    direction_images = _images(normalized, sol.directions)
    lambdas = lambda_grid(pm, grid_density, tolerances=tol)
    lambdas += [cell.witness for cell in sol.cells if cell.witness is not None and _strictly_inside(pm, cell.witness)]
    check_coverage = sol.status is SolutionStatus.SOLVED and bool(sol.cells)

    for lam in lambdas:
        w = pm.w(lam)
        outcome = solve_lp(weighted_sum_lp(normalized, w), tol)
        report.grid_points_checked += 1
        improving = bool(direction_images.size) and bool(np.any(direction_images @ w > RAY_TOL))
        if sol.status is not SolutionStatus.SOLVED:
            status = LpStatus.INFEASIBLE if sol.status is SolutionStatus.INFEASIBLE else LpStatus.UNBOUNDED
            if outcome.status is not status:
                report.mismatches.append(Mismatch(lam, status.value, outcome.status.value))
            continue
        if outcome.is_optimal:
            best = float(np.max(point_images @ w))
            gap = abs(outcome.objective_value - best)
            report.max_abs_gap = max(report.max_abs_gap, gap)
            if gap > GAP_TOL * (1.0 + abs(outcome.objective_value)):
                expected = f"optimal {outcome.objective_value:.9g}"
                report.mismatches.append(Mismatch(lam, expected, f"best point {best:.9g}"))
            elif improving:
                report.mismatches.append(Mismatch(lam, "bounded", "an improving direction"))
        elif outcome.status is LpStatus.UNBOUNDED and not improving:
            report.max_abs_gap = np.inf
            report.mismatches.append(Mismatch(lam, "an improving direction", "none"))
        elif outcome.status is LpStatus.INFEASIBLE:
            report.mismatches.append(Mismatch(lam, "feasible", "infeasible"))
        if check_coverage and not _covered(sol, lam):
            report.mismatches.append(Mismatch(lam, "a cell or an unbounded cut", "neither"))
    if report.mismatches:
        logger.warning("%d of %d parameters disagree", len(report.mismatches), report.grid_points_checked)
    return report


def recession_equivalence_check(
    p: Problem, sol: Solution, samples: int, seed: int = 0, tolerances: Optional[Tolerances] = None
) -> OracleReport:
    """Check that the weighted sum is bounded exactly for the weights no direction image improves"""
    tol = tolerances or Tolerances()
    report = OracleReport()
    if sol.status is SolutionStatus.INFEASIBLE:
        return report
    normalized = normalize_orientation(p, tol)
    pm = normalized.param_map
    direction_images = _images(normalized, sol.directions)
    for lam in sample_lambdas(pm, samples, np.random.default_rng(seed), tol):
        w = pm.w(lam)
        outcome = solve_lp(weighted_sum_lp(normalized, w), tol)
        report.grid_points_checked += 1
        bounded = sol.status is SolutionStatus.SOLVED and not (
            direction_images.size and np.any(direction_images @ w > RAY_TOL)
        )
        if outcome.is_optimal != bounded:
            report.mismatches.append(
                Mismatch(lam, "bounded" if bounded else "unbounded", outcome.status.value)
            )
    return report


def brute_force_lower_image(p: Problem, tolerances: Optional[Tolerances] = None) -> Generators:
    """
    Images of all basic feasible solutions and of all extreme directions, by basis enumeration.

    Returns:
        Generators: Point images and ray images, one per row, without duplicates.

    Raises:
        TooLarge: If ``n + m`` exceeds the enumeration limit.
    """
    tol = tolerances or Tolerances()
    total = p.n + p.m
    if total > MAX_ENUMERATION:
        raise TooLarge(f"Enumeration needs n + m <= {MAX_ENUMERATION}, got {total}")
    matrix = p.augmented_matrix
    points, rays = [], []
    for basis in combinations(range(total), p.m):
        try:
            lu = lu_factorize(matrix[:, basis], tol.singular)
        except SingularMatrix:
            continue
        nonbasis = [j for j in range(total) if j not in basis]
        x_basic = lu_solve(lu, p.rhs)
        if np.all(x_basic >= -tol.feasibility):
            x = np.zeros(total)
            x[list(basis)] = x_basic
            points.append(p.image(x))
        columns = lu_solve(lu, matrix[:, nonbasis])
        for position, j in enumerate(nonbasis):
            column = columns[:, position]
            if np.all(column <= tol.pivot):
                direction = np.zeros(total)
                direction[list(basis)] = -column
                direction[j] = 1.0
                rays.append(p.image(direction))
    return _unique_rows(points, p.q), _unique_rows(rays, p.q)


def _unique_rows(rows: list[RealMatrix], q: int) -> RealMatrix:
    if not rows:
        return np.zeros((0, q))
    array = np.array(rows)
    _, first = np.unique(np.round(array, 9), axis=0, return_index=True)
    return array[np.sort(first)]


def _support(generators: Generators, w: RealMatrix, cone: Cone) -> float:
    points, rays = generators
    rays = np.vstack([rays.reshape(-1, w.size), -cone.generators.T])
    if np.any(rays @ w > RAY_TOL):
        return np.inf
    return float(np.max(points @ w)) if points.size else -np.inf


def support_function_equality(
    gen_a: Generators, gen_b: Generators, cone: Cone, samples: int, seed: int = 0
) -> float:
    """
    Largest difference of the support functions of ``conv(points) + cone(rays) - C`` of two generator
    sets over sampled dual weights; ``inf`` when one side is bounded and the other is not.
    """
    gap = 0.0
    for w in sample_dual_weights(cone, samples, np.random.default_rng(seed)):
        value_a, value_b = _support(gen_a, w, cone), _support(gen_b, w, cone)
        if np.isinf(value_a) or np.isinf(value_b):
            if value_a != value_b:
                return np.inf
            continue
        gap = max(gap, abs(value_a - value_b))
    return gap


def _intersects(halfspaces: list[HalfspaceLambda]) -> bool:
    dim = halfspaces[0].normal.size
    normals = np.array([h.normal for h in halfspaces])
    offsets = np.array([h.offset for h in halfspaces])
    lp = ScalarLp.build(np.zeros(dim), normals, -offsets, [RowKind.GE] * len(halfspaces), [True] * dim)
    return solve_lp(lp).status is not LpStatus.INFEASIBLE


def cell_adjacency(sol: Solution) -> dict[int, set[int]]:
    """Graph of the cells, two cells being adjacent when their closures intersect"""
    graph: dict[int, set[int]] = {k: set() for k in range(len(sol.cells))}
    for a, b in combinations(range(len(sol.cells)), 2):
        if _intersects(list(sol.cells[a].halfspaces) + list(sol.cells[b].halfspaces)):
            graph[a].add(b)
            graph[b].add(a)
    return graph


def is_connected(graph: dict[int, set[int]]) -> bool:
    if not graph:
        return True
    start = next(iter(graph))
    seen = {start}
    queue = deque([start])
    while queue:
        for neighbor in graph[queue.popleft()] - seen:
            seen.add(neighbor)
            queue.append(neighbor)
    return len(seen) == len(graph)


def generators_of(sol: Solution) -> Generators:
    """Point images and direction images of a solution"""
    return sol.point_images, sol.direction_images


def as_generators(points: npt.ArrayLike, rays: npt.ArrayLike, q: int) -> Generators:
    return np.asarray(points, dtype=np.float64).reshape(-1, q), np.asarray(rays, dtype=np.float64).reshape(-1, q)
