"""
Coloring rules of E^n and explicitly colored finite point sets.

A rule maps every point to a non-negative integer color id. Rules are
vectorised: `colors(array)` colors an (M, n) array of points in one call, and
`color(point)` is the single-point convenience form.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import ClassVar, Dict, List, Sequence, Tuple

import dacite
import numpy as np
from scipy.spatial import cKDTree

from gallai.models.point import Configuration, Point


def flatten_color(digits: Sequence[int], radix: int) -> int:
    """Mixed-radix encoding of a per-axis color tuple, first axis most significant."""
    value = 0
    for digit in digits:
        if not 0 <= digit < radix:
            raise ValueError(f"digit {digit} outside 0..{radix - 1}")
        value = value * radix + int(digit)
    return value


def unflatten_color(value: int, radix: int, length: int) -> Tuple[int, ...]:
    if not 0 <= value < radix**length:
        raise ValueError(f"color {value} outside 0..{radix**length - 1}")
    digits = []
    for _ in range(length):
        value, digit = divmod(value, radix)
        digits.append(digit)
    return tuple(reversed(digits))


class ColoringRule:
    variant: ClassVar[str] = ""

    def colors(self, array) -> np.ndarray:
        raise NotImplementedError

    def color(self, p) -> int:
        coords = p.coords if isinstance(p, Point) else tuple(p)
        return int(self.colors(np.array([coords], dtype=float))[0])

    def to_dict(self) -> dict:
        return {"variant": self.variant, **asdict(self)}


@dataclass(frozen=True)
class BlockRule(ColoringRule):
    """Slabs [(i-1)a, ia) x E^(n-1) along the first axis; block i gets color i mod num_colors."""

    a: float
    num_colors: int
    variant: ClassVar[str] = "Block"

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"block length must be positive, got {self.a}")
        if self.num_colors < 1:
            raise ValueError(f"need at least one color, got {self.num_colors}")

    def block_index(self, array) -> np.ndarray:
        array = np.atleast_2d(np.asarray(array, dtype=float))
        return np.floor(array[:, 0] / self.a).astype(np.int64) + 1

    def colors(self, array) -> np.ndarray:
        return np.mod(self.block_index(array), self.num_colors)


@dataclass(frozen=True)
class GridBlockRule(ColoringRule):
    """Cubes of side h over the first num_axes axes, colored by per-axis residues."""

    h: float
    colors_per_axis: int
    num_axes: int
    variant: ClassVar[str] = "GridBlock"

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"block side must be positive, got {self.h}")
        if self.colors_per_axis < 1:
            raise ValueError(f"need at least one color per axis, got {self.colors_per_axis}")
        if self.num_axes < 1:
            raise ValueError(f"need at least one axis, got {self.num_axes}")

    @property
    def num_colors(self) -> int:
        return self.colors_per_axis**self.num_axes

    def color_tuples(self, array) -> np.ndarray:
        array = np.atleast_2d(np.asarray(array, dtype=float))
        if array.shape[1] < self.num_axes:
            raise ValueError(f"{self.num_axes} axes requested for points of dimension {array.shape[1]}")
        index = np.floor(array[:, : self.num_axes] / self.h).astype(np.int64) + 1
        return np.mod(index, self.colors_per_axis)

    def colors(self, array) -> np.ndarray:
        digits = self.color_tuples(array)
        weights = self.colors_per_axis ** np.arange(self.num_axes - 1, -1, -1, dtype=np.int64)
        return digits @ weights


@dataclass(frozen=True)
class SphericalFloorModRule(ColoringRule):
    """floor(|x|^2) mod m; depends only on the distance to the origin."""

    m: int
    variant: ClassVar[str] = "SphericalFloorMod"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be at least 1, got {self.m}")

    @property
    def num_colors(self) -> int:
        return self.m

    def colors(self, array) -> np.ndarray:
        array = np.atleast_2d(np.asarray(array, dtype=float))
        return np.mod(np.floor(np.einsum("ij,ij->i", array, array)).astype(np.int64), self.m)


@dataclass(frozen=True)
class ConstantRule(ColoringRule):
    value: int = 0
    variant: ClassVar[str] = "Constant"

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"color ids are non-negative, got {self.value}")

    @property
    def num_colors(self) -> int:
        return 1

    def colors(self, array) -> np.ndarray:
        array = np.atleast_2d(np.asarray(array, dtype=float))
        return np.full(len(array), self.value, dtype=np.int64)


@dataclass(frozen=True)
class TableRule(ColoringRule):
    """
    Colors read from a finite table; points farther than `radius` from every
    entry get `default`, so the rule stays total.
    """

    points: Configuration
    entries: Tuple[int, ...]
    default: int = 0
    radius: float = 1e-9
    variant: ClassVar[str] = "Table"

    def __post_init__(self):
        entries = tuple(int(c) for c in self.entries)
        if len(entries) != len(self.points):
            raise ValueError(f"{len(entries)} colors for {len(self.points)} table points")
        if min(entries, default=0) < 0 or self.default < 0:
            raise ValueError("color ids are non-negative")
        object.__setattr__(self, "entries", entries)

    @property
    def num_colors(self) -> int:
        return len(set(self.entries) | {self.default})

    def colors(self, array) -> np.ndarray:
        array = np.atleast_2d(np.asarray(array, dtype=float))
        tree = cKDTree(self.points.array)
        dist, index = tree.query(array, k=1, distance_upper_bound=self.radius)
        table = np.array(self.entries + (self.default,), dtype=np.int64)
        return table[np.where(np.isfinite(dist), index, len(self.entries))]

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "points": self.points.to_dict(),
            "entries": list(self.entries),
            "default": self.default,
            "radius": self.radius,
        }


RULE_VARIANTS = {
    cls.variant: cls for cls in (BlockRule, GridBlockRule, SphericalFloorModRule, ConstantRule, TableRule)
}

_DACITE = dacite.Config(type_hooks={float: float, int: int}, strict=True)


def rule_from_dict(data: dict) -> ColoringRule:
    data = dict(data)
    variant = data.pop("variant", None)
    if variant not in RULE_VARIANTS:
        raise ValueError(f"unknown coloring rule variant {variant!r}; expected one of {sorted(RULE_VARIANTS)}")
    cls = RULE_VARIANTS[variant]
    if cls is TableRule:
        from gallai.models.factory import ConfigurationFactory

        try:
            points = ConfigurationFactory.make_from_dict(data.pop("points"))
            entries = tuple(data.pop("entries"))
        except KeyError as e:
            raise ValueError(f"table rule is missing {e}")
        return TableRule(points, entries, **data)
    try:
        return dacite.from_dict(data_class=cls, data=data, config=_DACITE)
    except dacite.DaciteError as e:
        raise ValueError(f"invalid {variant} rule: {e}")


@dataclass(frozen=True)
class ColoredPointSet:
    points: Configuration
    colors: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        if len(colors) != len(self.points):
            raise ValueError(f"{len(colors)} colors for {len(self.points)} points")
        if colors and min(colors) < 0:
            raise ValueError("color ids are non-negative")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def from_rule(cls, points: Configuration, rule: ColoringRule) -> "ColoredPointSet":
        return cls(points, tuple(int(c) for c in rule.colors(points.array)))

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def classes(self) -> Dict[int, List[int]]:
        classes: Dict[int, List[int]] = {}
        for index, c in enumerate(self.colors):
            classes.setdefault(c, []).append(index)
        return classes

    def recolor(self, mapping: Dict[int, int]) -> "ColoredPointSet":
        return ColoredPointSet(self.points, tuple(mapping[c] for c in self.colors))

    def to_dict(self) -> dict:
        return {"points": self.points.to_dict(), "colors": list(self.colors)}


def ceil_ratio(b: float, a: float, eps: float = 1e-9) -> int:
    """ceil(b / a) that does not round 2.0000000001 up to 3."""
    return math.ceil(b / a - eps)
