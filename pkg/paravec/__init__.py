"""
This module initializes the paravec package and sets its version number.

paravec solves linear vector optimization problems, multi-objective LPs ordered by a polyhedral cone, with
a parametric simplex algorithm. The solution is a finite set of point and direction maximizers whose images
generate the lower image, together with the partition of the weight parameters into optimality regions.
"""

from paravec.config import Config, SolverOptions, Tolerances
from paravec.engine import Solution, SolutionStatus, solve
from paravec.model import Cone, Problem
from paravec.serialization import parse_problem, parse_solution, serialize_problem, serialize_solution

__version__ = "0.1.0"

__all__ = [
    "Config",
    "Cone",
    "Problem",
    "Solution",
    "SolutionStatus",
    "SolverOptions",
    "Tolerances",
    "parse_problem",
    "parse_solution",
    "serialize_problem",
    "serialize_solution",
    "solve",
]
