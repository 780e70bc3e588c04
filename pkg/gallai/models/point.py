"""
Point-set value types shared by every gallai module.

All types are frozen dataclasses: once built they are safe to share between
threads and worker processes. Float geometry goes through `Point` and
`Configuration`; the 5-cube lemma uses `ExactHammingPoint`, whose distances
are exact integers over two.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist


@dataclass(frozen=True)
class Tolerance:
    """
    Two lengths d1, d2 match iff |d1 - d2| <= abs_eps + rel_eps * max(|d1|, |d2|).
    """

    abs_eps: float = 1e-9
    rel_eps: float = 1e-12

    def __post_init__(self):
        if self.abs_eps < 0 or self.rel_eps < 0:
            raise ValueError(f"tolerances must be non-negative, got abs={self.abs_eps} rel={self.rel_eps}")

    def match(self, d1: float, d2: float) -> bool:
        return abs(d1 - d2) <= self.abs_eps + self.rel_eps * max(abs(d1), abs(d2))

    def close(self, a, b) -> np.ndarray:
        """Vectorised `match` with numpy broadcasting."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return np.abs(a - b) <= self.abs_eps + self.rel_eps * np.maximum(np.abs(a), np.abs(b))

    def to_dict(self) -> Dict[str, float]:
        return {"abs_eps": self.abs_eps, "rel_eps": self.rel_eps}


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class Point:
    coords: Tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(x) for x in self.coords)
        if not coords:
            raise ValueError("a point needs at least one coordinate")
        if not all(math.isfinite(x) for x in coords):
            raise ValueError(f"non-finite coordinate in {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def __iter__(self) -> Iterator[float]:
        return iter(self.coords)


@dataclass(frozen=True)
class Configuration:
    """
    An ordered, labelled, finite point set in E^n.

    Coincident points (closer than `tol.abs_eps`) are rejected unless
    `degenerate` is set, since zero distances defeat the congruence search.
    `names` optionally tags every point, e.g. "123" for the 5-cube points.
    """

    points: Tuple[Point, ...]
    label: Optional[str] = None
    names: Optional[Tuple[str, ...]] = None
    degenerate: bool = False
    tol: Tolerance = field(default=DEFAULT_TOLERANCE, compare=False, repr=False)

    def __post_init__(self):
        points = tuple(p if isinstance(p, Point) else Point(tuple(p)) for p in self.points)
        if not points:
            raise ValueError("a configuration needs at least one point")
        dim = points[0].dim
        for index, p in enumerate(points):
            if p.dim != dim:
                raise ValueError(f"point {index} has dimension {p.dim}, expected {dim}")
        object.__setattr__(self, "points", points)
        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            if len(names) != len(points):
                raise ValueError(f"{len(names)} names given for {len(points)} points")
            object.__setattr__(self, "names", names)
        if not self.degenerate and len(points) > 1:
            pairs = cKDTree(self.array).query_pairs(r=self.tol.abs_eps)
            if pairs:
                i, j = min(pairs)
                raise ValueError(f"points {i} and {j} coincide; pass degenerate=True to allow it")

    @classmethod
    def from_array(cls, array, label: Optional[str] = None, names=None, degenerate: bool = False,
                   tol: Tolerance = DEFAULT_TOLERANCE) -> "Configuration":
        array = np.atleast_2d(np.asarray(array, dtype=float))
        points = tuple(Point(tuple(row)) for row in array)
        return cls(points, label=label, names=None if names is None else tuple(names),
                   degenerate=degenerate, tol=tol)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array([p.coords for p in self.points], dtype=float)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def name(self, index: int) -> str:
        return self.names[index] if self.names is not None else str(index)

    def subset(self, indices: Sequence[int], label: Optional[str] = None) -> "Configuration":
        indices = list(indices)
        names = None if self.names is None else tuple(self.names[i] for i in indices)
        return Configuration(tuple(self.points[i] for i in indices), label=label or self.label,
                             names=names, degenerate=self.degenerate, tol=self.tol)

    def embed(self, dim: int) -> "Configuration":
        """Pad with zero coordinates up to `dim`."""
        if dim < self.dim:
            raise ValueError(f"cannot embed a {self.dim}-dimensional configuration into E^{dim}")
        if dim == self.dim:
            return self
        padded = np.hstack([self.array, np.zeros((len(self), dim - self.dim))])
        return Configuration.from_array(padded, label=self.label, names=self.names,
                                        degenerate=self.degenerate, tol=self.tol)

    def to_dict(self) -> dict:
        data = {"dim": self.dim, "points": [list(p.coords) for p in self.points], "label": self.label}
        if self.names is not None:
            data["names"] = list(self.names)
        return data


@dataclass(frozen=True)
class ExactHammingPoint:
    """
    A point of (1/sqrt 2){0,1}^positions given by the set of its non-zero entries.

    Bit i of `mask` stands for position i + 1, so "123" is 0b00111.
    """

    mask: int
    positions: int = 5

    def __post_init__(self):
        if not 1 <= self.positions <= 9:
            raise ValueError(f"positions must be in 1..9, got {self.positions}")
        if not 0 <= self.mask < (1 << self.positions):
            raise ValueError(f"mask {self.mask} out of range for {self.positions} positions")

    @classmethod
    def from_label(cls, label: str, positions: int = 5) -> "ExactHammingPoint":
        mask = 0
        for ch in str(label):
            position = int(ch)
            if not 1 <= position <= positions:
                raise ValueError(f"position {position} in {label!r} outside 1..{positions}")
            mask |= 1 << (position - 1)
        return cls(mask, positions)

    @property
    def label(self) -> str:
        return "".join(str(i + 1) for i in range(self.positions) if self.mask >> i & 1)

    @property
    def weight(self) -> int:
        return self.mask.bit_count()

    def doubled_squared_distance(self, other: "ExactHammingPoint") -> int:
        """Size of the symmetric difference of the two supports."""
        if other.positions != self.positions:
            raise ValueError(f"dimension mismatch: {self.positions} vs {other.positions}")
        return (self.mask ^ other.mask).bit_count()

    def squared_distance(self, other: "ExactHammingPoint") -> Fraction:
        return Fraction(self.doubled_squared_distance(other), 2)

    def to_point(self) -> Point:
        unit = 1 / math.sqrt(2)
        return Point(tuple(unit if self.mask >> i & 1 else 0.0 for i in range(self.positions)))


@dataclass(frozen=True)
class DistanceProfile:
    """Sorted multiset of squared pairwise distances; k points give k(k-1)/2 values."""

    values: Tuple[float, ...]

    @classmethod
    def of(cls, config: Configuration) -> "DistanceProfile":
        return cls.of_array(config.array)

    @classmethod
    def of_array(cls, array) -> "DistanceProfile":
        array = np.atleast_2d(np.asarray(array, dtype=float))
        if len(array) < 2:
            return cls(())
        return cls(tuple(float(v) for v in np.sort(pdist(array, "sqeuclidean"))))

    def matches(self, other: "DistanceProfile", tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        # tolerance is on lengths, not squared lengths
        if len(self.values) != len(other.values):
            return False
        return bool(np.all(tol.close(np.sqrt(self.values), np.sqrt(other.values))))


@dataclass(frozen=True)
class Match:
    """
    A congruent copy of a needle inside a haystack.

    `indices` is the sorted haystack index set, `assignment[i]` the haystack
    index that needle point i was matched to.
    """

    indices: Tuple[int, ...]
    assignment: Tuple[int, ...]
    profile: DistanceProfile

    def to_dict(self, haystack: Optional[Configuration] = None) -> dict:
        data = {"indices": list(self.indices), "assignment": list(self.assignment)}
        if haystack is not None and haystack.names is not None:
            data["names"] = [haystack.names[i] for i in self.indices]
        return data


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: float
    support: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"center": list(self.center.coords), "radius": self.radius, "support": list(self.support)}


@dataclass(frozen=True)
class Bound:
    """
    A computed length with its exactness flag.

    When `exact` is False the value is an upper bound reached after
    `restarts` optimizer starts; `witness` holds the minimizing direction or frame.
    """

    value: float
    exact: bool
    restarts: int = 0
    witness: Optional[Tuple[Tuple[float, ...], ...]] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "exact": self.exact,
            "kind": "exact" if self.exact else "upper bound",
            "restarts": self.restarts,
            "witness": None if self.witness is None else [list(row) for row in self.witness],
        }


def hamming_points(labels: Iterable[str], positions: int = 5) -> List[ExactHammingPoint]:
    return [ExactHammingPoint.from_label(label, positions) for label in labels]
