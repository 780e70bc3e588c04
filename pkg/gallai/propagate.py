"""
Forcing by "no rainbow K2": shrink per-point color sets on a finite instance.

An instance is a finite point set, a pattern K2, a number of colors r and some
seeded colors. Every congruent copy of K2 among the points becomes a
constraint that its points must not receive pairwise distinct colors. The
engine prunes colors that cannot be used without making some copy rainbow,
round after round, until nothing changes.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.spatial import cKDTree

from gallai.geometry import congruent_copies
from gallai.models.point import DEFAULT_TOLERANCE, Configuration, Tolerance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForbidRainbowConstraint:
    indices: Tuple[int, ...]


@dataclass(frozen=True)
class AllowedSetMap:
    """Per-point allowed colors as bitmasks over 0..r-1."""

    masks: Tuple[int, ...]
    r: int

    @classmethod
    def full(cls, size: int, r: int) -> "AllowedSetMap":
        return cls(((1 << r) - 1,) * size, r)

    def allowed(self, index: int) -> List[int]:
        return [c for c in range(self.r) if self.masks[index] >> c & 1]

    def cardinality(self, index: int) -> int:
        return self.masks[index].bit_count()

    @property
    def contradictory(self) -> bool:
        return any(m == 0 for m in self.masks)

    def issubset(self, other: "AllowedSetMap") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.masks, other.masks))

    def __len__(self) -> int:
        return len(self.masks)

    def to_dict(self) -> dict:
        return {"r": self.r, "masks": list(self.masks), "allowed": [self.allowed(i) for i in range(len(self))]}


@dataclass(frozen=True)
class Instance:
    points: Configuration
    k2: Configuration
    r: int
    seeds: Tuple[Tuple[int, int], ...]
    constraints: Tuple[ForbidRainbowConstraint, ...]

    def initial_map(self) -> AllowedSetMap:
        masks = list(AllowedSetMap.full(len(self.points), self.r).masks)
        for index, color in self.seeds:
            masks[index] = 1 << color
        return AllowedSetMap(tuple(masks), self.r)


def build_instance(points: Configuration, K2: Configuration, r: int, seeds: Sequence[Tuple[int, int]] = (),
                   tol: Tolerance = DEFAULT_TOLERANCE) -> Instance:
    if r < 1:
        raise ValueError(f"need at least one color, got r={r}")
    if len(K2) < 2:
        raise ValueError("K2 needs at least two points; a single point is never rainbow-free")
    fixed: Dict[int, int] = {}
    for index, color in seeds:
        if not 0 <= index < len(points):
            raise ValueError(f"seed index {index} outside 0..{len(points) - 1}")
        if not 0 <= color < r:
            raise ValueError(f"seed color {color} outside 0..{r - 1}")
        if fixed.setdefault(index, color) != color:
            raise ValueError(f"point {index} seeded with two colors")
    constraints = tuple(ForbidRainbowConstraint(m.indices) for m in congruent_copies(points, K2, tol))
    log.info(f"instance: {len(points)} points, {len(constraints)} copies of K2, r={r}, {len(fixed)} seeds")
    return Instance(points, K2, r, tuple(sorted(fixed.items())), constraints)


def _supported(masks: Sequence[int], others: Sequence[int], full: int) -> int:
    """
    Colors c for one tuple point such that some choice on `others` repeats a color.

    Either c itself is allowed at another point, or two other points share an
    allowed color and c can be anything.
    """
    union = 0
    for q in others:
        if masks[q] == 0:
            return 0
        union |= masks[q]
    for q, q2 in itertools.combinations(others, 2):
        if masks[q] & masks[q2]:
            return full
    return union


@dataclass
class PropagationResult:
    map: AllowedSetMap
    rounds: int
    contradiction: bool
    prunings: int
    converged: bool = True
    history: List[AllowedSetMap] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "contradiction": self.contradiction,
            "prunings": self.prunings,
            "converged": self.converged,
            "map": self.map.to_dict(),
        }


def propagate_fixpoint(instance: Instance, order: Optional[Sequence[int]] = None, max_rounds: Optional[int] = None,
                       record_history: bool = False, initial: Optional[AllowedSetMap] = None) -> PropagationResult:
    """
    Generalized arc consistency for every "not rainbow" tuple, iterated to a fixpoint.

    Each round reads one snapshot, collects the prunings of all constraints
    (in `order`, default the constraint order) and applies them together.
    The count includes the final round that changes nothing.
    """
    current = list((initial or instance.initial_map()).masks)
    full = (1 << instance.r) - 1
    order = list(range(len(instance.constraints))) if order is None else list(order)
    if sorted(order) != list(range(len(instance.constraints))):
        raise ValueError("order must be a permutation of the constraint indices")

    history = [AllowedSetMap(tuple(current), instance.r)] if record_history else []
    rounds = prunings = 0
    contradiction = any(m == 0 for m in current)
    converged = False
    while not contradiction and (max_rounds is None or rounds < max_rounds):
        rounds += 1
        proposed = list(current)
        for ci in order:
            tuple_ = instance.constraints[ci].indices
            for p in tuple_:
                others = [q for q in tuple_ if q != p]
                proposed[p] &= _supported(current, others, full)
        changed = sum((a ^ b).bit_count() for a, b in zip(current, proposed))
        current = proposed
        if record_history:
            history.append(AllowedSetMap(tuple(current), instance.r))
        if changed == 0:
            converged = True
            break
        prunings += changed
        contradiction = any(m == 0 for m in current)
    if contradiction:
        converged = True
        log.info(f"contradiction after {rounds} rounds")
    log.debug(f"propagation: {rounds} rounds, {prunings} colors pruned")
    return PropagationResult(AllowedSetMap(tuple(current), instance.r), rounds, contradiction, prunings,
                             converged, history)


@dataclass(frozen=True)
class FloodResult:
    components: Tuple[int, ...]
    seed_index: int

    @property
    def num_components(self) -> int:
        return len(set(self.components))

    @property
    def forced(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.components) if c == self.components[self.seed_index])

    def to_dict(self) -> dict:
        return {"components": list(self.components), "num_components": self.num_components,
                "forced": list(self.forced)}


def flood_fill_two_point(points: Configuration, seed_index: int, d: float,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> FloodResult:
    """
    Components of the graph joining points at distance exactly d.

    Without a rainbow pair at distance d, both ends of every edge share a
    color, so the whole component of the seed takes the seed's color.
    """
    if not 0 <= seed_index < len(points):
        raise ValueError(f"seed index {seed_index} outside 0..{len(points) - 1}")
    array = points.array
    slack = tol.abs_eps + tol.rel_eps * d
    components = DisjointSet(range(len(points)))
    for i, j in cKDTree(array).query_pairs(r=d + slack):
        if tol.match(float(np.linalg.norm(array[i] - array[j])), d):
            components.merge(i, j)
    labels: Dict[int, int] = {}
    return FloodResult(tuple(labels.setdefault(components[i], len(labels)) for i in range(len(points))), seed_index)


def _histogram(result: PropagationResult, indices: Sequence[int]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for i in indices:
        key = str(result.map.cardinality(i))
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items(), key=lambda kv: int(kv[0])))


def forcing_report(instance: Instance, result: PropagationResult, slab_axis: Optional[int] = None,
                   slab_value: float = 0.0, tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    n = len(instance.points)
    everyone = range(n)
    singletons = sum(1 for i in everyone if result.map.cardinality(i) == 1)
    full = sum(1 for i in everyone if result.map.cardinality(i) == instance.r)
    report = {
        "points": n,
        "constraints": len(instance.constraints),
        "colors": instance.r,
        "rounds": result.rounds,
        "contradiction": result.contradiction,
        "cardinality_histogram": _histogram(result, everyone),
        "singleton_fraction": singletons / n,
        "full_fraction": full / n,
    }
    if slab_axis is not None:
        if not 0 <= slab_axis < instance.points.dim:
            raise ValueError(f"slab axis {slab_axis} outside 0..{instance.points.dim - 1}")
        members = [i for i in everyone if tol.match(instance.points.array[i, slab_axis], slab_value)]
        at_most_two = sum(1 for i in members if result.map.cardinality(i) <= 2)
        report["slab"] = {
            "axis": slab_axis,
            "value": slab_value,
            "points": len(members),
            "cardinality_histogram": _histogram(result, members),
            "at_most_two": at_most_two,
            "at_most_two_fraction": at_most_two / len(members) if members else 0.0,
        }
    return report


def lattice_points(shape: Sequence[int], spacing: float = 1.0, origin: Optional[Sequence[float]] = None,
                   label: Optional[str] = None) -> Configuration:
    """Grid points origin + spacing * (i_1, ..., i_n), 0 <= i_k < shape[k], last axis fastest."""
    if not shape or any(s < 1 for s in shape):
        raise ValueError(f"lattice shape must be positive, got {tuple(shape)}")
    if not spacing > 0:
        raise ValueError(f"lattice spacing must be positive, got {spacing}")
    grid = np.array(list(itertools.product(*(range(s) for s in shape))), dtype=float) * spacing
    if origin is not None:
        grid = grid + np.asarray(origin, dtype=float)
    return Configuration.from_array(grid, label=label or "x".join(str(s) for s in shape))


def bisector_chain(d: float, step: float, count: int) -> Configuration:
    """
    Points x_0..x_count spaced `step` apart on a line, plus for each k >= 1 an
    apex y_k on the perpendicular bisector of x_(k-1) x_k at distance d from both.

    With K2 two points at distance d, the seed color at x_0 spreads along the chain.
    """
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d}")
    if not 0 < step <= 2 * d:
        raise ValueError(f"step must be in (0, 2d], got {step}")
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    height = float(np.sqrt(max(0.0, d * d - (step / 2) ** 2)))
    points = [(k * step, 0.0) for k in range(count + 1)]
    names = [f"x{k}" for k in range(count + 1)]
    points += [((k - 0.5) * step, height) for k in range(1, count + 1)]
    names += [f"y{k}" for k in range(1, count + 1)]
    return Configuration(tuple(points), label=f"bisector chain d={d}", names=tuple(names))
