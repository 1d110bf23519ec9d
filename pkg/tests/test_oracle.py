from dataclasses import replace

import numpy as np
import pytest

from paravec import Tolerances, solve
from paravec.exceptions import TooLarge, UnboundedParameterSet
from paravec.model import Cone, HalfspaceLambda, ParamMap
from paravec.oracle import (
    as_generators,
    brute_force_lower_image,
    cell_adjacency,
    generators_of,
    grid_scalarization_check,
    is_connected,
    lambda_grid,
    recession_equivalence_check,
    sample_dual_weights,
    support_function_equality,
)
from paravec.test_helper import nondegenerate_problem


@pytest.fixture
def solved(three_objectives):
    return solve(three_objectives)


def test_lambda_grid(normalized3):
    grid = lambda_grid(normalized3.param_map, 10)

    assert len(grid) == 45
    assert all(normalized3.param_map.contains(lam) for lam in grid)


def test_lambda_grid_of_unbounded_parameter_set():
    half_line = ParamMap(c_tilde=np.zeros(1), cone_halfspaces=(HalfspaceLambda([1.0], 0.0),))
    with pytest.raises(UnboundedParameterSet):
        lambda_grid(half_line, 10)


def test_sample_dual_weights():
    cone = Cone.orthant(3)
    weights = sample_dual_weights(cone, 20, np.random.default_rng(0))

    assert len(weights) == 20
    for w in weights:
        assert np.all(w > 0)
        assert w.sum() == pytest.approx(1.0)


def test_grid_check(three_objectives, solved):
    report = grid_scalarization_check(three_objectives, solved, 10)

    assert report.ok
    assert report.grid_points_checked >= 45
    assert report.max_abs_gap <= 1e-6


def test_grid_check_missing_point(three_objectives, solved):
    report = grid_scalarization_check(three_objectives, solved.with_points([1, 2, 3]), 10)

    assert not report.ok
    assert report.max_abs_gap > 1.0
    assert report.mismatches[0].expected.startswith("optimal")


def test_grid_check_missing_direction(three_objectives, solved):
    report = grid_scalarization_check(three_objectives, solved.with_directions([]), 10)

    assert not report.ok
    assert {mismatch.expected for mismatch in report.mismatches} == {"an improving direction"}


def test_grid_check_uncovered_parameters(three_objectives, solved):
    dropped = next(cell for cell in solved.cells if cell.basis == (0, 4))
    holed = replace(solved, cells=tuple(cell for cell in solved.cells if cell is not dropped))

    report = grid_scalarization_check(three_objectives, holed, 10)

    assert not report.ok
    assert report.max_abs_gap <= 1e-6
    assert {mismatch.expected for mismatch in report.mismatches} == {"a cell or an unbounded cut"}
    assert all(dropped.contains(mismatch.lam, 1e-7) for mismatch in report.mismatches)


def test_grid_check_without_cells_skips_coverage(three_objectives, solved):
    assert grid_scalarization_check(three_objectives, replace(solved, cells=()), 10).ok


def test_grid_check_bounded(bounded):
    report = grid_scalarization_check(bounded, solve(bounded), 20)
    assert report.ok


def test_grid_check_no_solution(no_solution):
    assert grid_scalarization_check(no_solution, solve(no_solution), 10).ok


def test_recession_equivalence(three_objectives, solved):
    assert recession_equivalence_check(three_objectives, solved, 50).ok
    assert not recession_equivalence_check(three_objectives, solved.with_directions([]), 50).ok


def test_brute_force_matches_solver(three_objectives, solved):
    points, rays = brute_force_lower_image(three_objectives)
    found = {tuple(np.round(image, 7)) for image in points}

    assert all(tuple(np.round(image, 7)) in found for image in solved.point_images)
    assert rays.shape[1] == 3
    gap = support_function_equality((points, rays), generators_of(solved), three_objectives.cone, 200)
    assert gap <= 1e-6


def test_brute_force_skips_bases_below_singular_threshold(three_objectives):
    points, rays = brute_force_lower_image(three_objectives, Tolerances(singular=10.0))

    assert points.shape == (0, 3)
    assert rays.shape == (0, 3)


def test_brute_force_too_large():
    with pytest.raises(TooLarge):
        brute_force_lower_image(nondegenerate_problem(3, 10, 10, 0))


def test_support_gap_is_infinite_when_boundedness_differs():
    bounded_set = as_generators([[0.0, 0.0]], [], 2)
    unbounded_set = as_generators([[0.0, 0.0]], [[1.0, 1.0]], 2)

    assert support_function_equality(bounded_set, unbounded_set, Cone.orthant(2), 20) == np.inf


def test_cells_are_connected(solved):
    graph = cell_adjacency(solved)

    assert len(graph) == 4
    assert is_connected(graph)


def test_is_connected():
    assert is_connected({})
    assert is_connected({0: {1}, 1: {0}})
    assert not is_connected({0: set(), 1: set()})
