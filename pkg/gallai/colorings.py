"""
Explicit colorings of E^n and samplers that test them against forbidden patterns.

The block colorings color slabs (or cubes over the first few axes) periodically
so that same-colored blocks are farther apart than the target's diameter while
a rainbow copy has to meet many blocks. The samplers place random congruent
copies of a pattern and look for a monochromatic or rainbow placement; a clean
report is evidence, not proof.
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from gallai.geometry import affine_dimension, box_width_bound, diameter, projection_bound
from gallai.models.coloring import (
    BlockRule,
    ColoringRule,
    ConstantRule,
    GridBlockRule,
    SphericalFloorModRule,
    TableRule,
    ceil_ratio,
    flatten_color,
    rule_from_dict,
    unflatten_color,
)
from gallai.models.point import DEFAULT_TOLERANCE, Configuration, DistanceProfile, Point, Tolerance
from gallai.models.verdict import GallaiReport, PatternMode, ViolationReport

log = logging.getLogger(__name__)

DEFAULT_TRIALS = 100_000
DEFAULT_BATCH_SIZE = 4096

Region = Sequence[Tuple[float, float]]

__all__ = [
    "BlockRule",
    "ColoringRule",
    "ConstantRule",
    "GridBlockRule",
    "SphericalFloorModRule",
    "TableRule",
    "block_color",
    "flatten_color",
    "grid_block_color",
    "grid_block_tuple",
    "is_spherical_rule",
    "parse_region",
    "random_rotations",
    "rule_from_dict",
    "spherical_floor_mod_color",
    "theorem_block_rule",
    "theorem_grid_rule",
    "unflatten_color",
    "verify_gallai",
    "verify_no_mono",
    "verify_no_rainbow",
]


def block_color(p: Point, a: float, num_colors: int) -> int:
    return BlockRule(a, num_colors).color(p)


def grid_block_tuple(p: Point, h: float, colors_per_axis: int, num_axes: int) -> Tuple[int, ...]:
    rule = GridBlockRule(h, colors_per_axis, num_axes)
    return tuple(int(c) for c in rule.color_tuples(np.array([p.coords]))[0])


def grid_block_color(p: Point, h: float, colors_per_axis: int, num_axes: int) -> int:
    """The flattened color id; see `grid_block_tuple` for the per-axis residues."""
    return GridBlockRule(h, colors_per_axis, num_axes).color(p)


def spherical_floor_mod_color(p: Point, m: int) -> int:
    return SphericalFloorModRule(m).color(p)


def is_spherical_rule(rule: ColoringRule, tol: Tolerance = DEFAULT_TOLERANCE, on_table_only: bool = False) -> bool:
    """
    Whether the color depends only on the distance to the origin.

    A table rule is total: every point off the table gets its default color, so
    it is spherical only when every entry away from the origin uses the
    default. With `on_table_only` the table is judged as a coloring of its own
    entries, bucketing them by radius.
    """
    if isinstance(rule, (SphericalFloorModRule, ConstantRule)):
        return True
    if isinstance(rule, (BlockRule, GridBlockRule)):
        return False
    if isinstance(rule, TableRule):
        radii = np.linalg.norm(rule.points.array, axis=1)
        entries = np.array(rule.entries)
        if not on_table_only:
            away = radii > tol.abs_eps
            return bool(np.all(entries[away] == rule.default))
        order = np.argsort(radii, kind="stable")
        radii, entries = radii[order], entries[order]
        for i in range(1, len(radii)):
            if tol.match(radii[i], radii[i - 1]) and entries[i] != entries[i - 1]:
                return False
        return True
    raise ValueError(f"unknown coloring rule {type(rule).__name__}")


def theorem_block_rule(X: Configuration, restarts: int = 64, seed: int = 0,
                       tol: Tolerance = DEFAULT_TOLERANCE) -> BlockRule:
    """
    Block(a, ceil(b/a) + 1) with a the box-width and b the diameter of X.

    Same-colored blocks are then more than b apart, so no copy of X is
    monochromatic. In dimension >= 3 the width is an upper bound, which only
    shrinks the guarantee on the rainbow side.
    """
    bound = box_width_bound(X, restarts, seed, tol)
    if bound.value <= tol.abs_eps:
        raise ValueError("configuration has zero box-width; use theorem_grid_rule instead")
    b = diameter(X)
    rule = BlockRule(bound.value, ceil_ratio(b, bound.value) + 1)
    log.info(f"block rule for {X.label or 'X'}: a={rule.a} ({'exact' if bound.exact else 'upper bound'}), "
             f"b={b}, {rule.num_colors} colors")
    return rule


def theorem_grid_rule(X: Configuration, restarts: int = 64, seed: int = 0,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> GridBlockRule:
    """
    GridBlock over n - m + 1 axes for X of affine dimension m < n.

    The side is h = g / sqrt(n - m + 1) where g bounds from above the least
    diameter of a projection of X onto an (n - m + 1)-dimensional subspace.
    """
    n, m = X.dim, affine_dimension(X, tol)
    if m >= n:
        raise ValueError(f"affine dimension {m} is not below the ambient dimension {n}")
    k = n - m + 1
    g = projection_bound(X, k, restarts, seed, tol).value
    if g <= tol.abs_eps:
        raise ValueError("every projection of the configuration collapses to a point")
    h = g / math.sqrt(k)
    rule = GridBlockRule(h, ceil_ratio(diameter(X), h) + 1, k)
    log.info(f"grid rule: g <= {g}, h={h}, {rule.colors_per_axis} colors on each of {k} axes")
    return rule


def parse_region(text: str) -> Tuple[Tuple[float, float], ...]:
    """Parse "x0,x1;y0,y1;..." into per-axis bounds."""
    region = []
    for part in text.split(";"):
        try:
            lo, hi = (float(v) for v in part.split(","))
        except ValueError:
            raise ValueError(f"cannot read region axis {part!r}; expected 'lo,hi'")
        if not lo <= hi:
            raise ValueError(f"empty region axis {part!r}")
        region.append((lo, hi))
    return tuple(region)


def random_rotations(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """`count` Haar-random orthogonal matrices from QR of Gaussian matrices, sign-corrected."""
    return _orthogonalize(rng.standard_normal((count, dim, dim)))


def _orthogonalize(gaussian: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(gaussian)
    signs = np.sign(np.diagonal(r, axis1=1, axis2=2))
    signs[signs == 0] = 1
    return q * signs[:, None, :]


def _is_mono(colors: np.ndarray) -> np.ndarray:
    return np.all(colors == colors[:, :1], axis=1)


def _is_rainbow(colors: np.ndarray) -> np.ndarray:
    ordered = np.sort(colors, axis=1)
    return np.all(np.diff(ordered, axis=1) != 0, axis=1)


_PREDICATES = {PatternMode.MONOCHROMATIC: _is_mono, PatternMode.RAINBOW: _is_rainbow}


def _recheck(rule: ColoringRule, pattern: Configuration, witness: np.ndarray, mode: PatternMode,
             tol: Tolerance) -> bool:
    if not DistanceProfile.of_array(witness).matches(DistanceProfile.of(pattern), tol):
        return False
    colors = [rule.color(Point(tuple(row))) for row in witness]
    return bool(_PREDICATES[mode](np.array([colors]))[0])


def _trial_draws(seed: int, start: int, count: int, dim: int, lo: np.ndarray,
                 hi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Draws for trials start..start+count-1; trial t always reads child t of SeedSequence(seed)."""
    gaussian = np.empty((count, dim, dim))
    shifts = np.empty((count, dim))
    for i in range(count):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(start + i,)))
        gaussian[i] = rng.standard_normal((dim, dim))
        shifts[i] = rng.uniform(lo, hi)
    return gaussian, shifts


def _sample(rule: ColoringRule, pattern: Configuration, mode: PatternMode, region: Region, trials: int,
            seed: int, batch_size: int, tol: Tolerance) -> ViolationReport:
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if batch_size < 1:
        raise ValueError(f"batch size must be at least 1, got {batch_size}")
    region = tuple((float(lo), float(hi)) for lo, hi in region)
    dim = len(region)
    if dim < pattern.dim:
        raise ValueError(f"region has dimension {dim}, pattern has dimension {pattern.dim}")
    base = pattern.embed(dim).array
    base = base - base.mean(axis=0)
    lo = np.array([r[0] for r in region])
    hi = np.array([r[1] for r in region])
    predicate = _PREDICATES[mode]
    k = len(base)

    log.info(f"sampling {trials} placements of {pattern.label or 'pattern'} ({k} points) for a {mode.value} copy")
    for start in range(0, trials, batch_size):
        count = min(batch_size, trials - start)
        gaussian, shifts = _trial_draws(seed, start, count, dim, lo, hi)
        rotations = _orthogonalize(gaussian)
        placed = np.einsum("kd,ted->tke", base, rotations) + shifts[:, None, :]
        colors = rule.colors(placed.reshape(-1, dim)).reshape(count, k)
        for t in np.flatnonzero(predicate(colors)):
            witness = placed[t]
            if not _recheck(rule, pattern, witness, mode, tol):
                log.warning(f"trial {start + t} failed its recheck, skipping")
                continue
            log.info(f"{mode.value} copy found at trial {start + t}")
            return ViolationReport(rule.to_dict(), mode, int(start + t + 1), seed, batch_size,
                                   witness_trial=int(start + t),
                                   witness_points=tuple(tuple(float(x) for x in row) for row in witness),
                                   witness_colors=tuple(int(c) for c in colors[t]))
    return ViolationReport(rule.to_dict(), mode, trials, seed, batch_size)


def verify_no_mono(rule: ColoringRule, X: Configuration, region: Region, trials: int = DEFAULT_TRIALS,
                   seed: int = 0, batch_size: int = DEFAULT_BATCH_SIZE,
                   tol: Tolerance = DEFAULT_TOLERANCE) -> ViolationReport:
    return _sample(rule, X, PatternMode.MONOCHROMATIC, region, trials, seed, batch_size, tol)


def verify_no_rainbow(rule: ColoringRule, P: Configuration, region: Region, trials: int = DEFAULT_TRIALS,
                      seed: int = 0, batch_size: int = DEFAULT_BATCH_SIZE,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> ViolationReport:
    return _sample(rule, P, PatternMode.RAINBOW, region, trials, seed, batch_size, tol)


def verify_gallai(rule: ColoringRule, X: Configuration, P: Configuration, region: Region,
                  trials: int = DEFAULT_TRIALS, seed: int = 0, batch_size: int = DEFAULT_BATCH_SIZE,
                  tol: Tolerance = DEFAULT_TOLERANCE) -> GallaiReport:
    """Sample for a monochromatic X and a rainbow P under the same rule."""
    return GallaiReport(
        verify_no_mono(rule, X, region, trials, seed, batch_size, tol),
        verify_no_rainbow(rule, P, region, trials, seed, batch_size, tol),
    )


def rainbow_diameter_bound(rule: BlockRule, num_points: int) -> Optional[float]:
    """
    Largest diameter a pattern with `num_points` points may have and still
    never be rainbow under `rule`.

    A rainbow set meets at least num_points blocks, so its first coordinates
    spread over more than (num_points - 2) * a.
    """
    if num_points < 2:
        return None
    return (num_points - 2) * rule.a
