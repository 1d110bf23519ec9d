"""
The vector optimization problem

maximize ``P^T x`` with respect to the order of a polyhedral cone ``C``, subject to ``A x <= b`` and ``x >= 0``.
Weights are parametrized by ``lambda`` in ``R^(q-1)`` through ``w(lambda) = (lambda, 1 - c~^T lambda)``, where
``c`` is an interior point of ``C`` normalized to ``c_q = 1``.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional

import numpy as np
import numpy.typing as npt

from paravec.config import Tolerances
from paravec.densela import RealMatrix, as_matrix
from paravec.exceptions import (
    ConeNotPointed,
    ConeNotSolid,
    DegenerateInteriorPoint,
    DimensionMismatch,
    InteriorPointInvalid,
    ParavecError,
    PreconditionViolated,
)
from paravec.scalarlp import LpStatus, RowKind, ScalarLp, solve_lp

logger = logging.getLogger(__name__)


def _frozen(array: RealMatrix) -> RealMatrix:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Cone:
    """A polyhedral cone given by its generators, one generator per column of a q x t matrix"""

    generators: RealMatrix

    def __post_init__(self) -> None:
        generators = as_matrix(self.generators, name="cone generators")
        if generators.shape[1] < 1:
            raise DimensionMismatch("The cone needs at least one generator")
        if np.any(np.all(generators == 0.0, axis=0)):
            raise DimensionMismatch("A cone generator is the zero vector")
        object.__setattr__(self, "generators", _frozen(generators))

    @classmethod
    def orthant(cls, q: int) -> "Cone":
        """The nonnegative orthant of R^q"""
        return cls(np.eye(q))

    @property
    def dim(self) -> int:
        return self.generators.shape[0]

    @property
    def num_generators(self) -> int:
        return self.generators.shape[1]

    def mean_generator(self) -> RealMatrix:
        return self.generators.mean(axis=1)

    def negated(self) -> "Cone":
        return Cone(-self.generators)


@dataclass(frozen=True, eq=False)
class HalfspaceLambda:
    """The halfspace ``{lambda : normal @ lambda + offset >= 0}``"""

    normal: RealMatrix
    offset: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", _frozen(np.array(self.normal, dtype=np.float64).reshape(-1)))
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_costs(cls, z: npt.ArrayLike, c_tilde: npt.ArrayLike) -> "HalfspaceLambda":
        """
        The halfspace ``{lambda : w(lambda) @ z >= 0}``.

        Args:
            z: A vector of R^q, e.g. a column of reduced costs or a cone generator.
            c_tilde: The first q-1 coordinates of the normalized interior point.
        """
        z = np.asarray(z, dtype=np.float64)
        return cls(normal=z[:-1] - z[-1] * np.asarray(c_tilde, dtype=np.float64), offset=z[-1])

    def value(self, lam: npt.ArrayLike) -> float:
        return float(self.normal @ np.asarray(lam, dtype=np.float64) + self.offset)

    def contains(self, lam: npt.ArrayLike, tol: float = 1e-9) -> bool:
        return self.value(lam) >= -tol

    def is_close(self, other: "HalfspaceLambda", tol: float = 1e-9) -> bool:
        return bool(np.allclose(self.normal, other.normal, atol=tol) and abs(self.offset - other.offset) <= tol)

    def __repr__(self) -> str:  # pragma: no cover
        terms = " + ".join(f"{a:g}*l{k + 1}" for k, a in enumerate(self.normal))
        return f"HalfspaceLambda({terms} + {self.offset:g} >= 0)"


@dataclass(frozen=True, eq=False)
class ParamMap:
    """The parametrization ``w(lambda)`` and the parameter set Lambda as halfspaces"""

    c_tilde: RealMatrix
    cone_halfspaces: tuple[HalfspaceLambda, ...]

    @classmethod
    def from_cone(cls, cone: Cone, interior_point: npt.ArrayLike) -> "ParamMap":
        c = np.asarray(interior_point, dtype=np.float64)
        if abs(c[-1] - 1.0) > 1e-12:
            raise PreconditionViolated(f"The interior point must have last coordinate 1, got {c[-1]}")
        c_tilde = _frozen(c[:-1].copy())
        halfspaces = tuple(HalfspaceLambda.from_costs(y, c_tilde) for y in cone.generators.T)
        return cls(c_tilde=c_tilde, cone_halfspaces=halfspaces)

    @property
    def dim(self) -> int:
        """Dimension of the parameter space, q - 1"""
        return self.c_tilde.size

    def w(self, lam: npt.ArrayLike) -> RealMatrix:
        return param_w(self, lam)

    def contains(self, lam: npt.ArrayLike, tol: float = 1e-9) -> bool:
        return all(halfspace.contains(lam, tol) for halfspace in self.cone_halfspaces)


@dataclass(frozen=True, eq=False)
class Problem:
    """
    A linear vector optimization problem.

    Attributes:
        objective: n x q matrix P, the objective is ``P^T x``.
        constraint_matrix: m x n matrix A.
        rhs: m-vector b.
        cone: The ordering cone C.
        interior_point: A point c of the interior of C.
        orientation: -1 when the problem was negated by :func:`normalize_orientation`, 1 otherwise.
    """

    objective: RealMatrix
    constraint_matrix: RealMatrix
    rhs: RealMatrix
    cone: Cone
    interior_point: RealMatrix
    orientation: int = field(default=1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "objective", _frozen(as_matrix(self.objective, name="objective")))
        object.__setattr__(
            self, "constraint_matrix", _frozen(as_matrix(self.constraint_matrix, name="constraint_matrix"))
        )
        object.__setattr__(self, "rhs", _frozen(as_matrix(self.rhs, name="rhs", ndim=1)))
        interior_point = as_matrix(self.interior_point, name="interior_point", ndim=1)
        object.__setattr__(self, "interior_point", _frozen(interior_point))

    @classmethod
    def create(
        cls,
        objective: npt.ArrayLike,
        constraint_matrix: npt.ArrayLike,
        rhs: npt.ArrayLike,
        cone: Optional[Cone] = None,
        interior_point: Optional[npt.ArrayLike] = None,
    ) -> "Problem":
        """
        Build a problem, defaulting to the nonnegative orthant and to the mean of the cone generators.

        Args:
            objective: n x q matrix P, one column per objective.
            constraint_matrix: m x n matrix A.
            rhs: m-vector b.
            cone: The ordering cone, the nonnegative orthant when omitted.
            interior_point: Interior point of the cone, the mean of its generators when omitted.
        """
        objective = as_matrix(objective, name="objective")
        cone = cone or Cone.orthant(objective.shape[1])
        if interior_point is None:
            interior_point = cone.mean_generator()
        return cls(objective, constraint_matrix, rhs, cone, interior_point)

    @property
    def n(self) -> int:
        return self.objective.shape[0]

    @property
    def m(self) -> int:
        return self.constraint_matrix.shape[0]

    @property
    def q(self) -> int:
        return self.objective.shape[1]

    @property
    def is_normalized(self) -> bool:
        return self.interior_point[-1] == 1.0

    @cached_property
    def augmented_matrix(self) -> RealMatrix:
        """``[A I]``"""
        return _frozen(np.hstack([self.constraint_matrix, np.eye(self.m)]))

    @cached_property
    def augmented_objective(self) -> RealMatrix:
        """P padded with zero rows for the slack variables"""
        return _frozen(np.vstack([self.objective, np.zeros((self.m, self.q))]))

    @cached_property
    def param_map(self) -> ParamMap:
        if not self.is_normalized:
            raise PreconditionViolated("The problem must be normalized before it has a parameter map")
        return ParamMap.from_cone(self.cone, self.interior_point)

    def image(self, x: npt.ArrayLike) -> RealMatrix:
        """``P^T x`` for the structural part of x"""
        return self.objective.T @ np.asarray(x, dtype=np.float64)[: self.n]

    def is_feasible(self, x: npt.ArrayLike, tol: float = 1e-7) -> bool:
        x = np.asarray(x, dtype=np.float64)[: self.n]
        return bool(np.all(x >= -tol) and np.all(self.constraint_matrix @ x <= self.rhs + tol))


@dataclass
class ValidationReport:
    """The violations found by :func:`validate_problem`"""

    violations: list[ParavecError] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_for_violations(self) -> None:
        if self.violations:
            raise self.violations[0]


def _is_pointed(generators: RealMatrix, tol: Tolerances) -> bool:
    q, t = generators.shape
    lp = ScalarLp.build(
        objective=np.zeros(2 * t),
        constraint_matrix=np.vstack(
            [np.hstack([generators, generators]), np.hstack([np.ones(t), np.zeros(t)])[None, :]]
        ),
        rhs=np.append(np.zeros(q), 1.0),
        row_kinds=[RowKind.EQ] * (q + 1),
    )
    return solve_lp(lp, tol).status is LpStatus.INFEASIBLE


def interior_margin(generators: RealMatrix, point: npt.ArrayLike, tol: Optional[Tolerances] = None) -> float:
    """
    Largest ``s <= 1`` with ``point +- s e_k`` in the cone for every k, or ``-inf`` if ``point`` is not in it.

    A point is interior exactly when the margin is positive.
    """
    tol = tol or Tolerances()
    q, t = generators.shape
    point = np.asarray(point, dtype=np.float64)
    num_vars = 1 + 2 * q * t
    rows, rhs = [], []
    for block, (k, sign) in enumerate((k, sign) for k in range(q) for sign in (1.0, -1.0)):
        start = 1 + block * t
        for i in range(q):
            row = np.zeros(num_vars)
            row[start : start + t] = generators[i]
            if i == k:
                row[0] = -sign
            rows.append(row)
            rhs.append(point[i])
    cap = np.zeros(num_vars)
    cap[0] = 1.0
    objective = cap.copy()
    lp = ScalarLp.build(
        objective=objective,
        constraint_matrix=np.vstack(rows + [cap]),
        rhs=np.append(rhs, 1.0),
        row_kinds=[RowKind.EQ] * len(rows) + [RowKind.LE],
    )
    outcome = solve_lp(lp, tol)
    return float(outcome.objective_value) if outcome.is_optimal else -np.inf


def validate_problem(p: Problem, tolerances: Optional[Tolerances] = None) -> ValidationReport:
    """
    Check the standing assumptions: consistent dimensions and a pointed solid cone with ``c`` in its interior.

    Returns:
        ValidationReport: Every violation found, empty when the problem is valid.
    """
    tol = tolerances or Tolerances()
    report = ValidationReport()
    n, q = p.objective.shape
    m = p.rhs.size
    if q < 2:
        report.violations.append(DimensionMismatch(f"At least 2 objectives are needed, got {q}"))
    if n < 1 or m < 1:
        report.violations.append(
            DimensionMismatch(f"At least one variable and one constraint are needed, got n={n}, m={m}")
        )
    if p.constraint_matrix.shape != (m, n):
        report.violations.append(
            DimensionMismatch(f"The constraint matrix has shape {p.constraint_matrix.shape}, expected ({m}, {n})")
        )
    if p.cone.dim != q:
        report.violations.append(DimensionMismatch(f"The cone lives in R^{p.cone.dim}, the objectives in R^{q}"))
    if p.interior_point.size != q:
        report.violations.append(
            DimensionMismatch(f"The interior point has {p.interior_point.size} coordinates, expected {q}")
        )
    if not report.ok:
        return report

    generators = p.cone.generators
    if not _is_pointed(generators, tol):
        report.violations.append(ConeNotPointed("The ordering cone contains a line"))
        return report
    if interior_margin(generators, p.cone.mean_generator(), tol) <= tol.interior:
        report.violations.append(ConeNotSolid("The ordering cone has an empty interior"))
        return report
    if interior_margin(generators, p.interior_point, tol) <= tol.interior:
        report.violations.append(
            InteriorPointInvalid(f"The point {p.interior_point.tolist()} is not in the interior of the ordering cone")
        )
    return report


def normalize_orientation(p: Problem, tolerances: Optional[Tolerances] = None) -> Problem:
    """
    Return an equivalent problem whose interior point has last coordinate 1.

    If ``c_q < 0`` the objective, the cone and the interior point are negated, which keeps the set of
    maximizers; the applied sign is kept in ``orientation``.

    Raises:
        DegenerateInteriorPoint: If no interior point with a nonzero last coordinate exists.
    """
    tol = tolerances or Tolerances()
    c = p.interior_point.copy()
    if abs(c[-1]) <= tol.geometry:
        # c + y stays interior for any generator y
        shifts = [y for y in p.cone.generators.T if abs(y[-1]) > tol.geometry]
        if not shifts:
            raise DegenerateInteriorPoint("Every generator of the cone has a zero last coordinate")
        c = c + shifts[0]
        logger.debug("Interior point moved to %s to get a nonzero last coordinate", c)
    if c[-1] < 0:
        p = replace(
            p,
            objective=-p.objective,
            cone=p.cone.negated(),
            interior_point=-c,
            orientation=-p.orientation,
        )
        c = p.interior_point.copy()
    c = c / c[-1]
    c[-1] = 1.0
    return replace(p, interior_point=c)


def param_w(pm: ParamMap, lam: npt.ArrayLike) -> RealMatrix:
    """``w(lambda) = (lambda, 1 - c~^T lambda)``"""
    lam = np.asarray(lam, dtype=np.float64).reshape(-1)
    return np.append(lam, 1.0 - pm.c_tilde @ lam)


def lambda_polytope(pm: ParamMap) -> tuple[HalfspaceLambda, ...]:
    """Lambda as one halfspace ``w(lambda) @ y >= 0`` per cone generator y"""
    return pm.cone_halfspaces
