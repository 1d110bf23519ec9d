"""
Export of the partition of Lambda into optimality regions

With two objectives the cells are intervals, with three they are polygons in the plane. Larger problems
can only be exported as halfspaces, in CSV.
"""

import csv
import io
import logging
from enum import Enum
from itertools import combinations
from typing import Sequence

import numpy as np

from paravec.densela import RealMatrix
from paravec.engine.state import Solution
from paravec.exceptions import UnsupportedDimension
from paravec.model import HalfspaceLambda

logger = logging.getLogger(__name__)

VERTEX_TOL = 1e-9
CANVAS = 480
MARGIN = 20
PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5")


class PartitionFormat(Enum):
    CSV = "csv"
    SVG = "svg"


def interval(halfspaces: Sequence[HalfspaceLambda], tol: float = VERTEX_TOL) -> RealMatrix:
    """The interval ``[lo, hi]`` cut out by halfspaces of the real line, as two 1-vectors, or no row when empty"""
    lower, upper = -np.inf, np.inf
    for h in halfspaces:
        a = float(h.normal[0])
        if abs(a) <= tol:
            if h.offset < -tol:
                return np.zeros((0, 1))
        elif a > 0:
            lower = max(lower, -h.offset / a)
        else:
            upper = min(upper, -h.offset / a)
    if lower > upper + tol:
        return np.zeros((0, 1))
    return np.array([[lower], [upper]])


def polygon(halfspaces: Sequence[HalfspaceLambda], tol: float = VERTEX_TOL) -> RealMatrix:
    """
    Vertices of the polygon cut out by halfspaces of the plane, counterclockwise.

    Every pair of boundary lines is intersected and the intersections violating some halfspace by more
    than ``tol`` are dropped.
    """
    vertices = []
    for a, b in combinations(halfspaces, 2):
        matrix = np.array([a.normal, b.normal])
        if abs(np.linalg.det(matrix)) <= 1e-12:
            continue
        v = np.linalg.solve(matrix, [-a.offset, -b.offset])
        if all(h.value(v) >= -tol for h in halfspaces):
            vertices.append(v)
    if not vertices:
        return np.zeros((0, 2))
    points = np.array(vertices)
    _, first = np.unique(np.round(points, 9), axis=0, return_index=True)
    points = points[np.sort(first)]
    center = points.mean(axis=0)
    angles = np.arctan2(points[:, 1] - center[1], points[:, 0] - center[0])
    return points[np.argsort(angles)]


def polygon_area(vertices: RealMatrix) -> float:
    """Shoelace formula; zero for fewer than three vertices"""
    if vertices.shape[0] < 3:
        return 0.0
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * abs(float(x @ np.roll(y, -1) - y @ np.roll(x, -1)))


def _dimension(sol: Solution) -> int:
    return sol.cone_generators.shape[0]


def cell_shapes(sol: Solution) -> list[RealMatrix]:
    """Interval or polygon vertices of every cell"""
    q = _dimension(sol)
    if q not in (2, 3):
        raise UnsupportedDimension(f"Cells can only be drawn for 2 or 3 objectives, got {q}")
    shape = interval if q == 2 else polygon
    return [shape(cell.halfspaces) for cell in sol.cells]


def _format_vertices(vertices: RealMatrix) -> str:
    return ";".join(" ".join(repr(float(v)) for v in vertex) for vertex in vertices)


def _format_halfspaces(halfspaces: Sequence[HalfspaceLambda]) -> str:
    return ";".join(" ".join(repr(float(v)) for v in (*h.normal, h.offset)) for h in halfspaces)


def _export_csv(sol: Solution) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if _dimension(sol) in (2, 3):
        writer.writerow(["cell", "basis", "vertices"])
        for k, (cell, vertices) in enumerate(zip(sol.cells, cell_shapes(sol))):
            writer.writerow([k, " ".join(map(str, cell.basis)), _format_vertices(vertices)])
    else:
        writer.writerow(["cell", "basis", "halfspaces"])
        for k, cell in enumerate(sol.cells):
            writer.writerow([k, " ".join(map(str, cell.basis)), _format_halfspaces(cell.halfspaces)])
    return buffer.getvalue()


class _Canvas:
    """Affine map of a box of the parameter space onto the drawing, y pointing up"""

    def __init__(self, lower: RealMatrix, upper: RealMatrix) -> None:
        self.lower = lower
        self.scale = (CANVAS - 2 * MARGIN) / np.maximum(upper - lower, 1e-12)

    def x(self, value: float) -> float:
        return MARGIN + (value - self.lower[0]) * self.scale[0]

    def y(self, value: float) -> float:
        return CANVAS - MARGIN - (value - self.lower[1]) * self.scale[1]

    def path(self, vertices: RealMatrix) -> str:
        return " ".join(f"{self.x(v[0]):.3f},{self.y(v[1]):.3f}" for v in vertices)


def _svg_polygons(sol: Solution) -> list[str]:
    domain = polygon(sol.lambda_halfspaces)
    canvas = _Canvas(domain.min(axis=0), domain.max(axis=0))
    elements = [f'<polygon points="{canvas.path(domain)}" fill="#bbbbbb" stroke="none"/>']
    for k, vertices in enumerate(cell_shapes(sol)):
        if vertices.shape[0] < 3:
            continue
        color = PALETTE[k % len(PALETTE)]
        elements.append(f'<polygon points="{canvas.path(vertices)}" fill="{color}" stroke="black" stroke-width="1"/>')
        center = vertices.mean(axis=0)
        elements.append(
            f'<text x="{canvas.x(center[0]):.3f}" y="{canvas.y(center[1]):.3f}" font-size="12" '
            f'text-anchor="middle">{k}</text>'
        )
    return elements


def _svg_intervals(sol: Solution) -> list[str]:
    domain = interval(sol.lambda_halfspaces)
    canvas = _Canvas(np.array([domain[0, 0], 0.0]), np.array([domain[1, 0], 1.0]))
    top, height = CANVAS / 2 - 20, 40
    width = canvas.x(domain[1, 0]) - canvas.x(domain[0, 0])
    elements = [f'<rect x="{MARGIN}" y="{top}" width="{width:.3f}" height="{height}" fill="#bbbbbb"/>']
    for k, bounds in enumerate(cell_shapes(sol)):
        if bounds.shape[0] < 2:
            continue
        left, right = canvas.x(bounds[0, 0]), canvas.x(bounds[1, 0])
        color = PALETTE[k % len(PALETTE)]
        elements.append(
            f'<rect x="{left:.3f}" y="{top}" width="{max(right - left, 1.0):.3f}" height="{height}" '
            f'fill="{color}" stroke="black" stroke-width="1"/>'
        )
        elements.append(
            f'<text x="{(left + right) / 2:.3f}" y="{top + height + 16}" font-size="12" text-anchor="middle">{k}</text>'
        )
    return elements


def _export_svg(sol: Solution) -> str:
    q = _dimension(sol)
    if q not in (2, 3):
        raise UnsupportedDimension(f"SVG export needs 2 or 3 objectives, got {q}")
    elements = _svg_polygons(sol) if q == 3 else _svg_intervals(sol)
    body = "\n  ".join(elements)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">\n'
        "  <title>Optimality regions; gray parameters give an unbounded weighted sum</title>\n"
        f"  {body}\n"
        "</svg>\n"
    )


def export_partition(sol: Solution, format: str) -> str:
    """
    Render the cells of a solution.

    Args:
        sol: A solved solution.
        format: ``"csv"`` for one row per cell (id, basis, vertices or halfspaces), ``"svg"`` for a drawing
            where the part of Lambda not covered by cells is gray.

    Raises:
        UnsupportedDimension: For SVG output with more than three objectives.
        ValueError: For an unknown format.
    """
    kind = PartitionFormat(format)
    logger.debug("Exporting %d cells as %s", len(sol.cells), kind.value)
    if kind is PartitionFormat.CSV:
        return _export_csv(sol)
    return _export_svg(sol)
