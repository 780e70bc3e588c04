"""
SVG pictures of 2-D slices of coloring rules, with witness overlays.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
import svgwrite

from gallai.models.coloring import ColoringRule
from gallai.models.point import Configuration

log = logging.getLogger(__name__)

DEFAULT_PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080",
)

Window = Tuple[Tuple[float, float], Tuple[float, float]]


def _grid(window: Window, pixels_per_unit: float, dim: int) -> Tuple[np.ndarray, int, int]:
    (x0, x1), (y0, y1) = window
    if not (x1 > x0 and y1 > y0):
        raise ValueError(f"empty render window {window}")
    if not pixels_per_unit > 0:
        raise ValueError(f"pixels per unit must be positive, got {pixels_per_unit}")
    nx = max(1, round((x1 - x0) * pixels_per_unit))
    ny = max(1, round((y1 - y0) * pixels_per_unit))
    xs = x0 + (np.arange(nx) + 0.5) / pixels_per_unit
    ys = y1 - (np.arange(ny) + 0.5) / pixels_per_unit  # row 0 is the top of the picture
    gx, gy = np.meshgrid(xs, ys)
    points = np.zeros((nx * ny, dim))
    points[:, 0] = gx.ravel()
    points[:, 1] = gy.ravel()
    return points, nx, ny


def _outline(points: np.ndarray) -> np.ndarray:
    """Points ordered by angle around their centroid."""
    centre = points.mean(axis=0)
    angles = np.arctan2(points[:, 1] - centre[1], points[:, 0] - centre[0])
    return points[np.argsort(angles, kind="stable")]


def color_grid(rule: ColoringRule, window: Window, pixels_per_unit: float = 20, dim: int = 2) -> np.ndarray:
    """Color ids at pixel centres, shape (rows, columns), top row first."""
    points, nx, ny = _grid(window, pixels_per_unit, dim)
    return rule.colors(points).reshape(ny, nx)


def render_rule(rule: ColoringRule, window: Window, pixels_per_unit: float = 20,
                palette: Optional[Sequence[str]] = None, overlays: Sequence[Configuration] = (),
                dim: int = 2) -> str:
    """
    The rule sampled at pixel centres over `window`, as SVG text.

    Equal-colored horizontal runs become one rect each; overlays are drawn as
    outlined polygons in the same coordinates. The output only depends on the
    arguments.
    """
    palette = tuple(palette) if palette else DEFAULT_PALETTE
    if dim < 2:
        raise ValueError("rendering needs at least two coordinates")
    grid = color_grid(rule, window, pixels_per_unit, dim)
    ny, nx = grid.shape
    (x0, _), (_, y1) = window

    dwg = svgwrite.Drawing(size=(nx, ny), profile="full")
    groups = {}
    for c in sorted(set(int(v) for v in np.unique(grid))):
        groups[c] = dwg.add(dwg.g(id=f"color-{c}", fill=palette[c % len(palette)], stroke="none"))
    for row in range(ny):
        values = grid[row]
        start = 0
        for col in range(1, nx + 1):
            if col == nx or values[col] != values[start]:
                groups[int(values[start])].add(dwg.rect(insert=(start, row), size=(col - start, 1)))
                start = col

    if overlays:
        layer = dwg.add(dwg.g(id="overlays", fill="none", stroke="black", stroke_width=max(1.0, pixels_per_unit / 20)))
        for config in overlays:
            if config.dim < 2:
                raise ValueError("overlays need two coordinates")
            pixels = np.column_stack([(config.array[:, 0] - x0) * pixels_per_unit,
                                      (y1 - config.array[:, 1]) * pixels_per_unit])
            coords: List[Tuple[float, float]] = [(round(float(x), 4), round(float(y), 4))
                                                 for x, y in _outline(pixels)]
            if len(coords) == 2:
                layer.add(dwg.line(start=coords[0], end=coords[1]))
            else:
                layer.add(dwg.polygon(coords))
    log.debug(f"rendered {nx}x{ny} pixels, {len(groups)} colors, {len(overlays)} overlays")
    return dwg.tostring()


def save_svg(svg: str, path) -> None:
    with open(path, "w") as f:
        f.write(svg)
    log.info(f"wrote {path}")


def window_from_region(region: Sequence[Tuple[float, float]]) -> Window:
    if len(region) != 2:
        raise ValueError(f"a render window is two axes, got {len(region)}")
    return (tuple(region[0]), tuple(region[1]))
