"""
Problem and solution documents

A problem document is a single mapping, written as JSON (YAML is accepted on input)::

    {
      "num_vars": 3, "num_constraints": 2, "num_objectives": 3,
      "objective": [[1, 0, 0], [0, 1, -1], [0, 0, 1]],
      "A": [[1, 1, 0], [1, 2, -1]],
      "b": [5, 9],
      "cone_generators": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
      "interior_point": [1, 1, 1]
    }

``objective`` has one row per objective and ``cone_generators`` one row per generator. Floats are written
with the shortest representation that reads back to the same double.
"""

import json
from typing import Any, Optional

import numpy as np
import yaml

from paravec.densela import RealMatrix
from paravec.engine.state import Cell, Solution, SolutionStatus, SolveStatistics, UnboundedCut
from paravec.exceptions import DimensionMismatch, ParseError
from paravec.model import Cone, HalfspaceLambda, Problem

REQUIRED_FIELDS = ("num_vars", "num_constraints", "num_objectives", "objective", "A", "b")


def _load(document: str) -> dict[str, Any]:
    try:
        data = json.loads(document)
    except json.JSONDecodeError:
        data = _load_yaml(document)
    if not isinstance(data, dict):
        raise ParseError("The document must be a mapping")
    return data


def _load_yaml(document: str) -> Any:
    try:
        return yaml.safe_load(document)
    except yaml.MarkedYAMLError as err:
        line = err.problem_mark.line + 1 if err.problem_mark else "?"
        raise ParseError(f"Invalid document at line {line}: {err.problem}") from err
    except yaml.YAMLError as err:
        raise ParseError(f"Invalid document: {err}") from err


def _field(data: dict[str, Any], name: str) -> Any:
    if name not in data:
        raise ParseError(f'Missing field "{name}"')
    return data[name]


def _count(data: dict[str, Any], name: str) -> int:
    value = _field(data, name)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f'Field "{name}" must be a nonnegative integer, got {value!r}')
    return value


def _array(value: Any, name: str) -> RealMatrix:
    try:
        return np.asarray(value, dtype=np.float64)
    except (TypeError, ValueError) as err:
        raise ParseError(f'Field "{name}" must hold numbers in rows of equal length') from err


def _numbers(value: Any, name: str, shape: tuple[int, ...]) -> RealMatrix:
    array = _array(value, name)
    if array.size == 0:
        array = array.reshape(shape)
    if array.shape != shape:
        raise DimensionMismatch(f'Field "{name}" has shape {array.shape}, expected {shape}')
    if not np.all(np.isfinite(array)):
        raise ParseError(f'Field "{name}" has non finite entries')
    return array


def parse_problem(document: str) -> Problem:
    """
    Read a problem document.

    Raises:
        ParseError: If the document is malformed or a required field is missing.
        DimensionMismatch: If an array does not match the declared sizes.
    """
    data = _load(document)
    n, m, q = (_count(data, name) for name in REQUIRED_FIELDS[:3])
    objective = _numbers(_field(data, "objective"), "objective", (q, n))
    constraint_matrix = _numbers(_field(data, "A"), "A", (m, n))
    rhs = _numbers(_field(data, "b"), "b", (m,))
    cone = None
    if data.get("cone_generators") is not None:
        generators = _array(data["cone_generators"], "cone_generators")
        count = generators.shape[0] if generators.ndim else 0
        cone = Cone(_numbers(generators, "cone_generators", (count, q)).T)
    interior_point = None
    if data.get("interior_point") is not None:
        interior_point = _numbers(data["interior_point"], "interior_point", (q,))
    return Problem.create(objective.T, constraint_matrix, rhs, cone, interior_point)


def _rows(array: RealMatrix) -> list[list[float]]:
    return [[float(v) for v in row] for row in np.atleast_2d(array)] if array.size else []


def serialize_problem(p: Problem) -> str:
    return json.dumps(
        {
            "num_vars": p.n,
            "num_constraints": p.m,
            "num_objectives": p.q,
            "objective": _rows(p.objective.T),
            "A": _rows(p.constraint_matrix),
            "b": [float(v) for v in p.rhs],
            "cone_generators": _rows(p.cone.generators.T),
            "interior_point": [float(v) for v in p.interior_point],
        },
        indent=2,
    )


def _halfspace(h: HalfspaceLambda) -> dict[str, Any]:
    return {"normal": [float(v) for v in h.normal], "offset": float(h.offset)}


def serialize_solution(sol: Solution) -> str:
    """Write a solution document, including the generators of the lower image and the partition"""
    return json.dumps(
        {
            "status": sol.status.value,
            "bounded": sol.bounded,
            "num_vars": sol.points.shape[1],
            "num_objectives": sol.point_images.shape[1],
            "orientation": sol.orientation,
            "points": _rows(sol.points),
            "directions": _rows(sol.directions),
            "point_images": _rows(sol.point_images),
            "direction_images": _rows(sol.direction_images),
            "lower_image_rays": _rows(sol.lower_image_rays),
            "point_bases": [list(basis) for basis in sol.point_bases],
            "cone_generators": _rows(sol.cone_generators.T),
            "lambda_halfspaces": [_halfspace(h) for h in sol.lambda_halfspaces],
            "cells": [
                {
                    "basis": list(cell.basis),
                    "defining": list(cell.defining),
                    "halfspaces": [_halfspace(h) for h in cell.halfspaces],
                    "witness": None if cell.witness is None else [float(v) for v in cell.witness],
                }
                for cell in sol.cells
            ],
            "unbounded_cuts": [
                {"basis": list(cut.basis), "variable": cut.variable, **_halfspace(cut.halfspace)}
                for cut in sol.unbounded_cuts
            ],
            "statistics": vars(sol.statistics),
        },
        indent=2,
    )


def _read_halfspace(item: dict[str, Any]) -> HalfspaceLambda:
    return HalfspaceLambda(np.asarray(item["normal"], dtype=np.float64), float(item["offset"]))


def _matrix(data: dict[str, Any], name: str, width: int) -> RealMatrix:
    return np.asarray(_field(data, name), dtype=np.float64).reshape(-1, width)


def parse_solution(document: str) -> Solution:
    """
    Read a document written by :func:`serialize_solution`.

    Raises:
        ParseError: If the document is malformed or a field is missing.
    """
    data = _load(document)
    n, q = _count(data, "num_vars"), _count(data, "num_objectives")
    try:
        status = SolutionStatus(_field(data, "status"))
        witness: Optional[list[float]]
        cells = []
        for item in data.get("cells", []):
            witness = item.get("witness")
            cells.append(
                Cell(
                    basis=tuple(item["basis"]),
                    defining=tuple(item.get("defining", ())),
                    halfspaces=tuple(_read_halfspace(h) for h in item["halfspaces"]),
                    witness=None if witness is None else np.asarray(witness, dtype=np.float64),
                )
            )
        cuts = tuple(
            UnboundedCut(tuple(item["basis"]), int(item["variable"]), _read_halfspace(item))
            for item in data.get("unbounded_cuts", [])
        )
        return Solution(
            status=status,
            points=_matrix(data, "points", n),
            directions=_matrix(data, "directions", n),
            point_images=_matrix(data, "point_images", q),
            direction_images=_matrix(data, "direction_images", q),
            point_bases=tuple(tuple(basis) for basis in data.get("point_bases", [])),
            cone_generators=_matrix(data, "cone_generators", q).T,
            lambda_halfspaces=tuple(_read_halfspace(h) for h in data.get("lambda_halfspaces", [])),
            cells=tuple(cells),
            unbounded_cuts=cuts,
            orientation=int(data.get("orientation", 1)),
            statistics=SolveStatistics(**data.get("statistics", {})),
        )
    except (KeyError, TypeError, ValueError) as err:
        raise ParseError(f"Invalid solution document: {err}") from err
