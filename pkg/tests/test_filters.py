import numpy as np
import pytest

from paravec import solve
from paravec.dictionary import DirectionMaximizer
from paravec.engine import EngineState, dedupe_image_insert, filter_generators
from paravec.engine.filters import is_generated
from paravec.oracle import generators_of, support_function_equality
from paravec.test_helper import nondegenerate_problem

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
NO_POINT = np.zeros((0, 2))
NO_RAY = np.zeros((0, 2))


@pytest.mark.parametrize(
    "target, points, rays, expected",
    [
        ([0.5, 0.5], SQUARE, NO_RAY, True),
        ([2.0, 2.0], SQUARE, NO_RAY, False),
        ([2.0, 2.0], SQUARE, np.array([[1.0, 1.0]]), True),
        ([1.0, 2.0], NO_POINT, np.eye(2), True),
        ([-1.0, 0.0], NO_POINT, np.eye(2), False),
    ],
    ids=["inside hull", "outside hull", "along a ray", "in cone", "outside cone"],
)
def test_is_generated(target, points, rays, expected):
    assert is_generated(np.array(target), points, rays) is expected


def test_dedupe_points():
    state = EngineState(tol_image=1e-7)

    assert dedupe_image_insert(state, np.zeros(3), [1.0, 2.0], (0,))
    assert not dedupe_image_insert(state, np.ones(3), [1.0, 2.0 + 1e-9], (1,))
    assert dedupe_image_insert(state, np.ones(3), [1.0, 2.1], (1,))
    assert state.point_bases == [(0,), (1,)]


def test_dedupe_directions_compares_normalized_images():
    state = EngineState(tol_image=1e-7)
    first = DirectionMaximizer(direction=np.array([1.0, 0.0, 0.0]), image=np.array([1.0, -1.0]), num_structural=2)
    scaled = DirectionMaximizer(direction=np.array([0.0, 2.0, 0.0]), image=np.array([2.0, -2.0]), num_structural=2)

    assert dedupe_image_insert(state, first, first.image)
    assert not dedupe_image_insert(state, scaled, scaled.image)
    assert len(state.directions) == 1


def test_insert_direction_skips_known_direction():
    state = EngineState()
    direction = DirectionMaximizer(direction=np.array([1.0, 0.0, 5.0]), image=np.array([1.0]), num_structural=2)

    assert state.insert_direction(direction)
    assert not state.insert_direction(direction)
    assert np.array_equal(state.directions[0], [1.0, 0.0])


def test_filter_two_objectives_keeps_support_function(two_objectives):
    sol = solve(two_objectives)
    filtered = filter_generators(sol)

    assert filtered.points.shape[0] < sol.points.shape[0]
    gap = support_function_equality(generators_of(sol), generators_of(filtered), two_objectives.cone, 100)
    assert gap <= 1e-9


@pytest.mark.parametrize("seed", range(3))
def test_filter_keeps_support_function(seed):
    p = nondegenerate_problem(3, 6, 5, seed)
    sol = solve(p)
    filtered = filter_generators(sol)

    assert filtered.points.shape[0] <= sol.points.shape[0]
    assert filtered.directions.shape[0] <= sol.directions.shape[0]
    assert support_function_equality(generators_of(sol), generators_of(filtered), p.cone, 100, seed) <= 1e-6
