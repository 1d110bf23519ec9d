import numpy as np
import pytest

from paravec.engine.initialization import weighted_sum_lp
from paravec.exceptions import DimensionMismatch
from paravec.scalarlp import LpStatus, RowKind, ScalarLp, feasible_basis, solve_lp


def test_optimal_with_basis():
    lp = ScalarLp.build([3.0, 2.0], [[1.0, 1.0], [1.0, 3.0]], [4.0, 6.0])
    outcome = solve_lp(lp)

    assert outcome.is_optimal
    assert outcome.objective_value == pytest.approx(12.0)
    assert np.allclose(outcome.solution, [4.0, 0.0])
    assert outcome.basis == (0, 3)


def test_unbounded_gives_improving_ray():
    lp = ScalarLp.build([1.0, 0.0], [[-1.0, 1.0]], [1.0])
    outcome = solve_lp(lp)

    assert outcome.status is LpStatus.UNBOUNDED
    ray = outcome.certificate_ray
    assert lp.objective @ ray > 0
    assert np.all(lp.constraint_matrix @ ray <= 1e-12)
    assert np.all(ray >= 0)


def test_infeasible():
    lp = ScalarLp.build([1.0], [[1.0]], [-1.0])
    assert solve_lp(lp).status is LpStatus.INFEASIBLE


def test_free_variable_and_greater_equal_row():
    lp = ScalarLp.build([-1.0], [[1.0]], [-2.0], row_kinds=[RowKind.GE], free=[True])
    outcome = solve_lp(lp)

    assert outcome.is_optimal
    assert outcome.solution == pytest.approx([-2.0])
    assert outcome.objective_value == pytest.approx(2.0)


def test_equality_rows():
    lp = ScalarLp.build([1.0, 2.0], [[1.0, 1.0], [1.0, 0.0]], [1.0, 0.25], row_kinds=[RowKind.EQ, RowKind.LE])
    outcome = solve_lp(lp)

    assert outcome.objective_value == pytest.approx(2.0)
    assert np.allclose(outcome.solution, [0.0, 1.0])


def test_degenerate_cycling_example_terminates():
    objective = [0.75, -150.0, 0.02, -6.0]
    matrix = [[0.25, -60.0, -0.04, 9.0], [0.5, -90.0, -0.02, 3.0], [0.0, 0.0, 1.0, 0.0]]
    outcome = solve_lp(ScalarLp.build(objective, matrix, [0.0, 0.0, 1.0]))

    assert outcome.is_optimal
    assert outcome.objective_value == pytest.approx(0.05)


def test_empty_constraint_matrix():
    outcome = solve_lp(ScalarLp.build([-1.0, -2.0], np.zeros((0, 2)), []))
    assert outcome.objective_value == pytest.approx(0.0)


def test_feasible_basis():
    assert feasible_basis(ScalarLp.build([0.0, 0.0], [[1.0, 1.0], [1.0, 3.0]], [4.0, 6.0])) == (2, 3)
    assert feasible_basis(ScalarLp.build([0.0], [[1.0]], [-1.0])) is None

    basis = feasible_basis(ScalarLp.build([0.0, 0.0], [[-1.0, -1.0]], [-1.0]))
    assert basis is not None and len(basis) == 1 and basis[0] in (0, 1)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ScalarLp.build([1.0, 2.0], [[1.0, 1.0]], [1.0, 2.0])


def test_weighted_sum_of_three_objectives(three_objectives):
    outcome = solve_lp(weighted_sum_lp(three_objectives, [1 / 3, 1 / 3, 1 / 3]))

    assert outcome.objective_value == pytest.approx(5 / 3)
    assert np.allclose(outcome.solution, [5.0, 0.0, 0.0])


def test_third_objective_alone_is_unbounded(three_objectives):
    outcome = solve_lp(weighted_sum_lp(three_objectives, [0.0, 0.0, 1.0]))

    assert outcome.status is LpStatus.UNBOUNDED
    assert np.allclose(outcome.certificate_ray, [0.0, 0.0, 1.0])


@pytest.mark.parametrize("seed", range(10))
def test_primal_and_dual_optima_agree(seed):
    rng = np.random.default_rng(seed)
    m, n = 3 + seed % 3, 4 + seed % 4
    a = rng.uniform(0.1, 1.0, size=(m, n))
    b = rng.uniform(1.0, 5.0, size=m)
    c = rng.normal(size=n)

    primal = solve_lp(ScalarLp.build(c, a, b))
    dual = solve_lp(ScalarLp.build(-b, a.T, c, row_kinds=[RowKind.GE] * n))

    assert primal.is_optimal and dual.is_optimal
    assert primal.objective_value == pytest.approx(-dual.objective_value, abs=1e-6)


@pytest.mark.parametrize(
    "lp",
    [
        ScalarLp.build(
            [0.75, -150.0, 0.02, -6.0],
            [[0.25, -60.0, -0.04, 9.0], [0.5, -90.0, -0.02, 3.0], [0.0, 0.0, 1.0, 0.0]],
            [0.0, 0.0, 1.0],
        ),
        ScalarLp.build([1.0, 2.0], [[-1.0, -1.0], [1.0, -2.0], [1.0, 1.0]], [-1.0, 2.0, 4.0]),
        ScalarLp.build([1.0, 0.0], [[-1.0, 1.0]], [1.0]),
    ],
    ids=["degenerate", "phase one", "unbounded"],
)
def test_repeated_solves_are_identical(lp):
    first, second = solve_lp(lp), solve_lp(lp)

    assert first.status is second.status
    assert first.basis == second.basis
    assert first.objective_value == second.objective_value
    for a, b in ((first.solution, second.solution), (first.certificate_ray, second.certificate_ray)):
        assert (a is None and b is None) or np.array_equal(a, b)
