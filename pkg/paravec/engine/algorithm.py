"""The parametric simplex algorithm and the end to end solve pipeline"""

import logging
import time
from dataclasses import replace
from typing import Optional

import numpy as np
import numpy.typing as npt

from paravec.config import SolverOptions
from paravec.dictionary import Dictionary, basic_solution, extract_direction, leaving_variable, pivot
from paravec.engine.filters import filter_generators
from paravec.engine.initialization import init_perturbation, init_via_p0, init_via_weight
from paravec.engine.state import (
    BoundaryEntry,
    Cell,
    EngineState,
    Solution,
    SolutionStatus,
    SolveStatistics,
    UnboundedCut,
    dedupe_image_insert,
)
from paravec.exceptions import InfeasibleProblem, IterationLimitExceeded, NoSolution, ScalarUnbounded
from paravec.model import Problem, normalize_orientation, validate_problem
from paravec.regions import defining_set

logger = logging.getLogger(__name__)


def _add_dictionary(
    p: Problem, state: EngineState, d: Dictionary, explored: set[tuple[int, int]], options: SolverOptions
) -> None:
    tol = options.tolerances
    result = defining_set(d, p.param_map, tol)
    state.lp_count += result.lp_count
    if result.region_empty_interior:
        logger.warning("No point of the region of %s in the interior of Lambda was certified", d.basis)
    state.boundary[d.basis] = BoundaryEntry(dictionary=d, defining=result, explored=explored)
    x = basic_solution(d)
    if options.dedupe_images:
        dedupe_image_insert(state, x, p.image(x), d.basis)
    else:
        state.insert_point(x, p.image(x), d.basis)
    if state.known > options.max_dictionaries:
        logger.error(
            "Dictionary cap reached: %d visited, %d on the boundary (%s ...)",
            len(state.visited),
            len(state.boundary),
            sorted(state.boundary)[:5],
        )
        raise IterationLimitExceeded(f"More than {options.max_dictionaries} dictionaries were materialized")


def _process(p: Problem, state: EngineState, entry: BoundaryEntry, options: SolverOptions) -> int:
    """Explore the entering candidates of one boundary dictionary; returns the number of pivots"""
    tol = options.tolerances
    d = entry.dictionary
    pivots = 0
    for j in entry.defining.defining:
        i = leaving_variable(d, j, tol.pivot)
        if i is None:
            direction = extract_direction(d, j, tol.pivot)
            if options.dedupe_images:
                dedupe_image_insert(state, direction, direction.image)
            else:
                state.insert_direction(direction)
            state.unbounded_cuts.append(UnboundedCut(d.basis, j, entry.defining.halfspaces[j]))
            logger.debug("Unbounded entering %d at %s, direction %s", j, d.basis, direction.structural)
            continue
        if (j, i) in entry.explored:
            continue
        new_key = tuple(sorted(set(d.basis) - {i} | {j}))
        state.pivot_log.append((d.basis, j, i))
        pivots += 1
        if new_key in state.visited:
            continue
        if new_key in state.boundary:
            state.boundary[new_key].explored.add((i, j))
            continue
        logger.debug("Pivot %d in, %d out: %s -> %s", j, i, d.basis, new_key)
        _add_dictionary(p, state, pivot(d, j, i, tol.pivot, tol.singular), {(i, j)}, options)
    return pivots


def run_algorithm1(p: Problem, d0: Dictionary, options: Optional[SolverOptions] = None) -> Solution:
    """
    Explore the optimality regions from ``d0`` and collect the maximizers.

    Boundary dictionaries are processed smallest basis first. From each one, every entering candidate
    either yields a direction (no leaving variable) or a pivot, unless that pivot is already known to lead
    to an encountered dictionary.

    Args:
        p: The normalized problem.
        d0: A primal feasible dictionary whose region meets the interior of Lambda.
        options: Tolerances, filters and the dictionary cap.

    Returns:
        Solution: Points, directions, cells and unbounded cuts in the orientation of ``p``.
    """
    options = options or SolverOptions.from_config()
    started = time.perf_counter()
    state = EngineState(tol_image=options.tolerances.image)
    _add_dictionary(p, state, d0, set(), options)
    pivots = 0
    while state.boundary:
        key = min(state.boundary)
        entry = state.boundary[key]
        logger.debug("Processing %s, entering candidates %s", key, entry.defining.defining)
        pivots += _process(p, state, entry, options)
        del state.boundary[key]
        state.visited.add(key)
        state.cells.append(
            Cell(
                basis=key,
                defining=entry.defining.defining,
                halfspaces=tuple(entry.defining.region(p.param_map.cone_halfspaces)),
                witness=entry.defining.witness,
            )
        )
    statistics = SolveStatistics(
        dictionaries=len(state.visited),
        pivots=pivots,
        directions_found=len(state.directions),
        lp_count=state.lp_count,
        seconds=time.perf_counter() - started,
    )
    logger.info(
        "Visited %d dictionaries: %d points, %d directions",
        len(state.visited),
        len(state.points),
        len(state.directions),
    )
    return state.to_solution(p, statistics)


def initial_dictionary(p: Problem, options: SolverOptions) -> tuple[Dictionary, str]:
    """
    Pick the initialization: a given weight first, then the configured method.

    An unbounded weighted sum for the given weight falls back to the weight LP, as does the perturbation
    method when b has a negative entry.
    """
    tol = options.tolerances
    if options.weight is not None:
        try:
            return init_via_weight(p, np.asarray(options.weight) * p.orientation, tol), "weight"
        except ScalarUnbounded as err:
            logger.info("%s, using the weight LP instead", err.message)
    elif options.init == "perturb":
        if np.all(p.rhs >= 0):
            return init_perturbation(p, tol, options.max_dictionaries), "perturb"
        logger.info("b has negative entries, using the weight LP instead of the perturbation method")
    return init_via_p0(p, tol), "p0"


def _reorient(solution: Solution, original: Problem) -> Solution:
    """Report images and the cone in the orientation of the problem as given"""
    return replace(
        solution,
        point_images=solution.points @ original.objective,
        direction_images=solution.directions @ original.objective,
        cone_generators=original.cone.generators,
    )


def solve(
    problem: Problem, options: Optional[SolverOptions] = None, w0: Optional[npt.ArrayLike] = None
) -> Solution:
    """
    Validate, normalize, initialize and run the algorithm.

    Args:
        problem: The problem as given.
        options: Run settings, read from ``Config`` when omitted.
        w0: A starting weight, overriding the one of ``options``.

    Returns:
        Solution: With status ``infeasible`` or ``no_solution`` and no generators when there is no
        solution.

    Raises:
        ParavecError: For an invalid problem or a numerical failure.
    """
    options = options or SolverOptions.from_config()
    if w0 is not None:
        options = replace(options, weight=tuple(float(v) for v in np.ravel(w0)))
    tol = options.tolerances
    validate_problem(problem, tol).raise_for_violations()
    p = normalize_orientation(problem, tol)
    started = time.perf_counter()
    try:
        d0, method = initial_dictionary(p, options)
    except InfeasibleProblem as err:
        logger.info(err.message)
        return Solution.empty(SolutionStatus.INFEASIBLE, problem)
    except NoSolution as err:
        logger.info(err.message)
        return Solution.empty(SolutionStatus.NO_SOLUTION, problem)
    solution = run_algorithm1(p, d0, options)
    if options.filter_generators:
        solution = filter_generators(solution, tol)
    solution.statistics.init_method = method
    solution.statistics.seconds = time.perf_counter() - started
    return _reorient(solution, problem)
