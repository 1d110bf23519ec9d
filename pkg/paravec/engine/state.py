"""Bookkeeping of the parametric simplex exploration and the solution it returns"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Union

import numpy as np
import numpy.typing as npt

from paravec.densela import RealMatrix
from paravec.dictionary import Dictionary, DirectionMaximizer
from paravec.model import HalfspaceLambda, Problem
from paravec.regions import DefiningSetResult

BasisKey = tuple[int, ...]


class SolutionStatus(Enum):
    """Outcome of a solve"""

    SOLVED = "solved"
    INFEASIBLE = "infeasible"
    NO_SOLUTION = "no_solution"


@dataclass(frozen=True, eq=False)
class Cell:
    """Optimality region of a visited dictionary: its defining halfspaces followed by those of Lambda"""

    basis: BasisKey
    defining: tuple[int, ...]
    halfspaces: tuple[HalfspaceLambda, ...]
    witness: Optional[RealMatrix] = None

    def contains(self, lam: npt.ArrayLike, tol: float = 1e-9) -> bool:
        return all(halfspace.contains(lam, tol) for halfspace in self.halfspaces)


@dataclass(frozen=True, eq=False)
class UnboundedCut:
    """Halfspace of an entering variable without leaving variable; beyond it the scalarization is unbounded"""

    basis: BasisKey
    variable: int
    halfspace: HalfspaceLambda


@dataclass
class SolveStatistics:
    """Counters of one run"""

    dictionaries: int = 0
    pivots: int = 0
    directions_found: int = 0
    lp_count: int = 0
    init_method: str = ""
    seconds: float = 0.0


@dataclass(frozen=True, eq=False)
class Solution:
    """
    A finite supremizer and the partition of the parameter set it came from.

    Attributes:
        status: Whether a solution exists.
        points: Point maximizers, one per row.
        directions: Direction maximizers, one per row.
        point_images: ``P^T x`` of every point, one per row.
        direction_images: ``P^T x`` of every direction, one per row.
        point_bases: The basis that produced every point.
        cone_generators: Generators of the ordering cone, one per column.
        lambda_halfspaces: Lambda, the parameter set.
        cells: One cell per visited dictionary, in visiting order.
        unbounded_cuts: Halfspaces beyond which the scalarization is unbounded.
        orientation: -1 when the problem was solved negated.
        statistics: Counters of the run.
        pivot_log: Every pivot performed, as (basis, entering, leaving).
    """

    status: SolutionStatus
    points: RealMatrix
    directions: RealMatrix
    point_images: RealMatrix
    direction_images: RealMatrix
    point_bases: tuple[BasisKey, ...]
    cone_generators: RealMatrix
    lambda_halfspaces: tuple[HalfspaceLambda, ...] = ()
    cells: tuple[Cell, ...] = ()
    unbounded_cuts: tuple[UnboundedCut, ...] = ()
    orientation: int = 1
    statistics: SolveStatistics = field(default_factory=SolveStatistics)
    pivot_log: tuple[tuple[BasisKey, int, int], ...] = ()

    @classmethod
    def empty(cls, status: SolutionStatus, p: Problem) -> "Solution":
        return cls(
            status=status,
            points=np.zeros((0, p.n)),
            directions=np.zeros((0, p.n)),
            point_images=np.zeros((0, p.q)),
            direction_images=np.zeros((0, p.q)),
            point_bases=(),
            cone_generators=p.cone.generators,
        )

    @property
    def bounded(self) -> bool:
        return self.directions.shape[0] == 0

    @property
    def lower_image_rays(self) -> RealMatrix:
        """Direction images and the negated cone generators, one per row"""
        return np.vstack([self.direction_images, -self.cone_generators.T])

    @property
    def lower_image_vrep(self) -> tuple[RealMatrix, RealMatrix]:
        return self.point_images, self.lower_image_rays

    def with_points(self, keep: list[int]) -> "Solution":
        return replace(
            self,
            points=self.points[keep],
            point_images=self.point_images[keep],
            point_bases=tuple(self.point_bases[k] for k in keep),
        )

    def with_directions(self, keep: list[int]) -> "Solution":
        return replace(self, directions=self.directions[keep], direction_images=self.direction_images[keep])


@dataclass
class BoundaryEntry:
    """A dictionary waiting to be processed, with its entering candidates and explored pivots"""

    dictionary: Dictionary
    defining: DefiningSetResult
    explored: set[tuple[int, int]] = field(default_factory=set)


@dataclass
class EngineState:
    """
    Mutable state of one run.

    ``boundary`` holds the dictionaries to process, ``visited`` the processed basis keys. Points and
    directions accumulate with their images.
    """

    tol_image: float = 1e-7
    boundary: dict[BasisKey, BoundaryEntry] = field(default_factory=dict)
    visited: set[BasisKey] = field(default_factory=set)
    cells: list[Cell] = field(default_factory=list)
    points: list[RealMatrix] = field(default_factory=list)
    point_images: list[RealMatrix] = field(default_factory=list)
    point_bases: list[BasisKey] = field(default_factory=list)
    directions: list[RealMatrix] = field(default_factory=list)
    direction_images: list[RealMatrix] = field(default_factory=list)
    unbounded_cuts: list[UnboundedCut] = field(default_factory=list)
    pivot_log: list[tuple[BasisKey, int, int]] = field(default_factory=list)
    lp_count: int = 0

    @property
    def known(self) -> int:
        return len(self.boundary) + len(self.visited)

    def insert_point(self, x: RealMatrix, image: RealMatrix, basis: BasisKey) -> None:
        self.points.append(np.asarray(x, dtype=np.float64))
        self.point_images.append(np.asarray(image, dtype=np.float64))
        self.point_bases.append(basis)

    def insert_direction(self, direction: DirectionMaximizer) -> bool:
        """Add a direction unless the same structural direction is already known"""
        x = direction.structural
        if any(np.allclose(x, known, rtol=0.0, atol=self.tol_image) for known in self.directions):
            return False
        self.directions.append(x.copy())
        self.direction_images.append(np.asarray(direction.image, dtype=np.float64))
        return True

    def to_solution(self, p: Problem, statistics: SolveStatistics) -> Solution:
        return Solution(
            status=SolutionStatus.SOLVED,
            points=np.array(self.points).reshape(len(self.points), p.n),
            directions=np.array(self.directions).reshape(len(self.directions), p.n),
            point_images=np.array(self.point_images).reshape(len(self.point_images), p.q),
            direction_images=np.array(self.direction_images).reshape(len(self.direction_images), p.q),
            point_bases=tuple(self.point_bases),
            cone_generators=p.cone.generators,
            lambda_halfspaces=p.param_map.cone_halfspaces,
            cells=tuple(self.cells),
            unbounded_cuts=tuple(self.unbounded_cuts),
            orientation=p.orientation,
            statistics=statistics,
            pivot_log=tuple(self.pivot_log),
        )


def _unit_l1(image: RealMatrix) -> RealMatrix:
    norm = float(np.sum(np.abs(image)))
    return image / norm if norm > 0 else image


def dedupe_image_insert(
    state: EngineState,
    x: Union[RealMatrix, DirectionMaximizer],
    image: npt.ArrayLike,
    basis: BasisKey = (),
) -> bool:
    """
    Insert a point or a direction unless its image is already known.

    Points compare images coordinatewise within ``tol_image``; directions compare images scaled to unit
    sum of absolute values.

    Returns:
        bool: True when inserted.
    """
    image = np.asarray(image, dtype=np.float64)
    if isinstance(x, DirectionMaximizer):
        unit = _unit_l1(image)
        if any(np.all(np.abs(_unit_l1(known) - unit) <= state.tol_image) for known in state.direction_images):
            return False
        return state.insert_direction(x)
    if any(np.all(np.abs(known - image) <= state.tol_image) for known in state.point_images):
        return False
    state.insert_point(x, image, basis)
    return True
