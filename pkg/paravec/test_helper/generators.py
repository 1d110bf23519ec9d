"""
Random problem recipes

Nondegenerate problems draw every entry of A and P from N(0, 100) and b uniformly from [0, 10].
Degenerate problems keep A that way but make b mostly zero and couple the objectives: the second is the
negative of the first, the third has a single nonzero entry and a fourth has at most half of its entries
nonzero. Further objectives are Gaussian.
"""

from typing import Callable

import numpy as np

from paravec.model import Problem

STD = 10.0
B_HIGH = 10.0


def nondegenerate_problem(q: int, n: int, m: int, seed: int) -> Problem:
    rng = np.random.default_rng(seed)
    constraint_matrix = rng.normal(0.0, STD, size=(m, n))
    objective = rng.normal(0.0, STD, size=(n, q))
    rhs = rng.uniform(0.0, B_HIGH, size=m)
    return Problem.create(objective, constraint_matrix, rhs)


def _sparse(rng: np.random.Generator, size: int, max_nonzero: int, sample: Callable[[int], np.ndarray]) -> np.ndarray:
    """A vector with a uniform number in ``[0, max_nonzero]`` of nonzero entries at random positions"""
    vector = np.zeros(size)
    count = int(rng.integers(0, max_nonzero, endpoint=True))
    positions = rng.choice(size, size=count, replace=False)
    vector[positions] = sample(count)
    return vector


def degenerate_problem(q: int, n: int, m: int, seed: int) -> Problem:
    """
    A problem built to have primal degeneracy and regions with empty interior.

    Args:
        q: Number of objectives, at least 2.
        n: Number of variables.
        m: Number of constraints.
        seed: Seed of ``numpy.random.default_rng``.
    """
    rng = np.random.default_rng(seed)
    constraint_matrix = rng.normal(0.0, STD, size=(m, n))
    rhs = _sparse(rng, m, m // 2, lambda count: rng.uniform(0.0, B_HIGH, size=count))
    objective = rng.normal(0.0, STD, size=(n, q))
    objective[:, 1] = -objective[:, 0]
    if q > 2:
        objective[:, 2] = 0.0
        objective[rng.integers(n), 2] = rng.normal(0.0, STD)
    if q > 3:
        objective[:, 3] = _sparse(rng, n, n // 2, lambda count: rng.normal(0.0, STD, size=count))
    return Problem.create(objective, constraint_matrix, rhs)
