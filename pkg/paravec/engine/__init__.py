"""The parametric simplex algorithm, its initializations and the solution filters"""

from paravec.engine.algorithm import initial_dictionary, run_algorithm1, solve
from paravec.engine.filters import filter_generators
from paravec.engine.initialization import init_perturbation, init_via_p0, init_via_weight
from paravec.engine.state import Cell, EngineState, Solution, SolutionStatus, UnboundedCut, dedupe_image_insert

__all__ = [
    "Cell",
    "EngineState",
    "Solution",
    "SolutionStatus",
    "UnboundedCut",
    "dedupe_image_insert",
    "filter_generators",
    "init_perturbation",
    "init_via_p0",
    "init_via_weight",
    "initial_dictionary",
    "run_algorithm1",
    "solve",
]
