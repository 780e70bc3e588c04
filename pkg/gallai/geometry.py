"""
Metric invariants of finite point configurations and the congruent-copy search.

Everything here is a pure function of its inputs. Widths and projection
diameters in dimension >= 3 come from multi-start local optimization and are
reported as upper bounds (`Bound.exact` is False); all other values are exact
up to floating point.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist, squareform

from gallai.models.point import (
    DEFAULT_TOLERANCE,
    Ball,
    Bound,
    Configuration,
    DistanceProfile,
    ExactHammingPoint,
    Match,
    Point,
    Tolerance,
)

log = logging.getLogger(__name__)

DEFAULT_RESTARTS = 64

# Called with the haystack indices placed so far and a candidate index;
# returning False rejects the candidate.
PruneFn = Callable[[Sequence[int], int], bool]


def distance(p: Union[Point, ExactHammingPoint], q: Union[Point, ExactHammingPoint]) -> float:
    if isinstance(p, ExactHammingPoint) and isinstance(q, ExactHammingPoint):
        return math.sqrt(p.doubled_squared_distance(q) / 2)
    if isinstance(p, ExactHammingPoint):
        p = p.to_point()
    if isinstance(q, ExactHammingPoint):
        q = q.to_point()
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    return math.dist(p.coords, q.coords)


def diameter(c: Configuration) -> float:
    if len(c) < 2:
        return 0.0
    return float(np.sqrt(pdist(c.array, "sqeuclidean").max()))


def affine_dimension(c: Configuration, tol: Tolerance = DEFAULT_TOLERANCE) -> int:
    if len(c) < 2:
        return 0
    centered = c.array - c.array.mean(axis=0)
    singular = np.linalg.svd(centered, compute_uv=False)
    threshold = tol.abs_eps + tol.rel_eps * singular[0]
    return int(np.count_nonzero(singular > threshold))


def _extent(array: np.ndarray, direction: np.ndarray) -> float:
    norm = np.linalg.norm(direction)
    if norm == 0:
        return math.inf
    projected = array @ (direction / norm)
    return float(projected.max() - projected.min())


def _calipers_width(array: np.ndarray) -> Tuple[float, np.ndarray]:
    """Exact width of a full-dimensional planar set by rotating calipers over its hull."""
    hull = ConvexHull(array)
    vertices = array[hull.vertices]  # counter-clockwise in 2-D
    h = len(vertices)
    best, best_normal = math.inf, None
    j = 1
    for i in range(h):
        a, b = vertices[i], vertices[(i + 1) % h]
        edge = b - a
        normal = np.array([-edge[1], edge[0]]) / np.linalg.norm(edge)
        # the antipodal vertex only ever moves forward
        while abs(np.dot(vertices[(j + 1) % h] - a, normal)) > abs(np.dot(vertices[j] - a, normal)):
            j = (j + 1) % h
        height = abs(float(np.dot(vertices[j] - a, normal)))
        if height < best:
            best, best_normal = height, normal
    return best, best_normal


def _minimize_extent(array: np.ndarray, restarts: int, seed: int) -> Tuple[float, np.ndarray]:
    n = array.shape[1]
    rng = np.random.default_rng(seed)
    starts = [rng.standard_normal(n) for _ in range(restarts)]
    # hull facet normals are good starting directions
    normals = ConvexHull(array).equations[:, :-1]
    facet_best = min(normals, key=lambda u: _extent(array, u))
    starts.append(facet_best)

    best, best_dir = _extent(array, facet_best), facet_best / np.linalg.norm(facet_best)
    for start in starts:
        result = minimize(lambda u: _extent(array, u), start, method="Nelder-Mead",
                          options={"xatol": 1e-11, "fatol": 1e-13, "maxiter": 4000 * n})
        if result.fun < best:
            best, best_dir = float(result.fun), result.x / np.linalg.norm(result.x)
    return best, best_dir


def box_width_bound(c: Configuration, restarts: int = DEFAULT_RESTARTS, seed: int = 0,
                    tol: Tolerance = DEFAULT_TOLERANCE) -> Bound:
    """
    Least a such that c fits in a slab [0, a] x E^(n-1), with its exactness flag.

    Exact for n <= 2 and for sets that lie in a hyperplane; otherwise an upper
    bound from multi-start Nelder-Mead over unit directions.
    """
    array, n = c.array, c.dim
    if len(c) < 2:
        return Bound(0.0, True)
    if n == 1:
        return Bound(float(array.max() - array.min()), True, witness=((1.0,),))
    if affine_dimension(c, tol) < n:
        centered = array - array.mean(axis=0)
        normal = np.linalg.svd(centered)[2][-1]
        return Bound(0.0, True, witness=(tuple(float(x) for x in normal),))
    if n == 2:
        width, normal = _calipers_width(array)
        return Bound(width, True, witness=(tuple(float(x) for x in normal),))
    width, direction = _minimize_extent(array, restarts, seed)
    log.debug(f"box width upper bound {width} after {restarts} restarts")
    return Bound(width, False, restarts, witness=(tuple(float(x) for x in direction),))


def box_width(c: Configuration, restarts: int = DEFAULT_RESTARTS, seed: int = 0,
              tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    return box_width_bound(c, restarts, seed, tol).value


def _circumcenter(array: np.ndarray, support: Sequence[int]) -> np.ndarray:
    """Centre of the smallest sphere through the support points, inside their affine hull."""
    base = array[support[0]]
    if len(support) == 1:
        return base.copy()
    rows = array[list(support[1:])] - base
    gram = rows @ rows.T
    coeffs = np.linalg.lstsq(2 * gram, np.diag(gram), rcond=None)[0]
    return base + rows.T @ coeffs


def _ball_through(array: np.ndarray, support: List[int]) -> Tuple[np.ndarray, float, List[int]]:
    if not support:
        return np.zeros(array.shape[1]), -1.0, []
    center = _circumcenter(array, support)
    radius = float(max(np.linalg.norm(array[i] - center) for i in support))
    return center, radius, list(support)


def _inside(point: np.ndarray, center: np.ndarray, radius: float, tol: Tolerance) -> bool:
    if radius < 0:
        return False
    return float(np.linalg.norm(point - center)) <= radius + tol.abs_eps + tol.rel_eps * radius


def _welzl(array, indices, support, limit, tol):
    ball = _ball_through(array, support)
    if len(support) == limit:
        return ball
    for position, i in enumerate(indices):
        if not _inside(array[i], ball[0], ball[1], tol):
            ball = _welzl(array, indices[:position], support + [i], limit, tol)
    return ball


def enclosing_ball(c: Configuration, tol: Tolerance = DEFAULT_TOLERANCE, seed: int = 0) -> Ball:
    """Minimum enclosing ball; the support set has at most n + 1 points."""
    array = c.array
    order = [int(i) for i in np.random.default_rng(seed).permutation(len(array))]
    center, radius, support = _welzl(array, order, [], c.dim + 1, tol)
    return Ball(Point(tuple(center)), max(radius, 0.0), tuple(sorted(support)))


def circumradius(c: Configuration, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    return enclosing_ball(c, tol).radius


def is_spherical(c: Configuration, tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[Ball]:
    """A sphere (inside the affine hull) through every point of c, or None."""
    if len(c) < 2:
        raise ValueError("sphericality needs at least two points")
    array = c.array
    center = _circumcenter(array, list(range(len(c))))
    radii = np.linalg.norm(array - center, axis=1)
    radius = float(radii.max())
    if not np.all(tol.close(radii, radius)):
        return None
    return Ball(Point(tuple(center)), radius, tuple(range(len(c))))


def simplex_heights(c: Configuration, tol: Tolerance = DEFAULT_TOLERANCE) -> List[float]:
    """
    Distance of each point, from the third on, to the affine span of its predecessors.

    Heights follow the input order; a point that is affinely dependent on its
    predecessors gets height 0.
    """
    if len(c) < 3:
        raise ValueError(f"simplex heights need at least three points, got {len(c)}")
    array = c.array
    origin = array[0]
    basis: List[np.ndarray] = []
    heights = []
    for i in range(1, len(array)):
        v = array[i] - origin
        for e in basis:
            v = v - np.dot(v, e) * e
        norm = float(np.linalg.norm(v))
        if i >= 2:
            heights.append(norm if norm > tol.abs_eps else 0.0)
        if norm > tol.abs_eps:
            basis.append(v / norm)
    return heights


def _needle_order(needle_d: np.ndarray, hay_pairs: np.ndarray, tol: Tolerance) -> List[int]:
    """Needle points ordered so the rarest needle distances are matched first."""
    k = len(needle_d)
    counts = np.zeros((k, k), dtype=int)
    for u in range(k):
        for v in range(u + 1, k):
            counts[u, v] = counts[v, u] = int(np.count_nonzero(tol.close(hay_pairs, needle_d[u, v])))
    u, v = min(((u, v) for u in range(k) for v in range(u + 1, k)), key=lambda pair: counts[pair])
    order = [u, v]
    remaining = [w for w in range(k) if w not in order]
    while remaining:
        w = min(remaining, key=lambda x: (min(counts[x, y] for y in order), x))
        order.append(w)
        remaining.remove(w)
    return order


def congruent_copies(haystack: Configuration, needle: Configuration, tol: Tolerance = DEFAULT_TOLERANCE,
                     prune: Optional[PruneFn] = None, limit: Optional[int] = None) -> List[Match]:
    """
    All point sets of the haystack congruent to the needle, one Match per set.

    Backtracks over needle points, rarest needle distance first, keeping only
    haystack candidates whose distances to every placed point match. `prune`
    lets callers reject candidates early (colour restrictions); `limit` stops
    after that many distinct copies.
    """
    k, size = len(needle), len(haystack)
    if k > size or size == 0:
        return []
    if k == 1:
        found = [Match((i,), (i,), DistanceProfile(())) for i in range(size) if prune is None or prune((), i)]
        return found[:limit] if limit else found

    hay_d = squareform(pdist(haystack.array))
    needle_d = squareform(pdist(needle.array))
    hay_pairs = hay_d[np.triu_indices(size, 1)]
    order = _needle_order(needle_d, hay_pairs, tol)

    found: Dict[Tuple[int, ...], Match] = {}
    assignment = [-1] * k
    used = np.zeros(size, dtype=bool)

    def extend(depth: int) -> bool:
        if depth == k:
            key = tuple(sorted(assignment))
            if key not in found:
                found[key] = Match(key, tuple(assignment), DistanceProfile.of_array(haystack.array[list(key)]))
            return limit is not None and len(found) >= limit
        u = order[depth]
        mask = ~used
        for t in range(depth):
            w = order[t]
            mask &= tol.close(hay_d[assignment[w]], needle_d[w, u])
        placed = [assignment[order[t]] for t in range(depth)]
        for j in np.flatnonzero(mask):
            j = int(j)
            if prune is not None and not prune(placed, j):
                continue
            assignment[u] = j
            used[j] = True
            done = extend(depth + 1)
            used[j] = False
            assignment[u] = -1
            if done:
                return True
        return False

    extend(0)
    return [found[key] for key in sorted(found)]


def _projected_diameter(array: np.ndarray, frame: np.ndarray) -> float:
    q, _ = np.linalg.qr(frame)
    projected = array @ q
    return float(np.sqrt(pdist(projected, "sqeuclidean").max()))


def projection_bound(c: Configuration, subspace_dim: int, restarts: int = DEFAULT_RESTARTS,
                     seed: int = 0, tol: Tolerance = DEFAULT_TOLERANCE) -> Bound:
    """
    Smallest diameter of c projected onto a subspace_dim-dimensional subspace.

    Lines reduce to the width, which is exact in the plane. Otherwise this is
    an upper bound over optimized orthonormal frames.
    """
    n = c.dim
    if not 1 <= subspace_dim <= n:
        raise ValueError(f"subspace dimension {subspace_dim} outside 1..{n}")
    if len(c) < 2:
        return Bound(0.0, True)
    if subspace_dim == n:
        return Bound(diameter(c), True, witness=tuple(tuple(row) for row in np.eye(n)))
    if subspace_dim == 1:
        return box_width_bound(c, restarts, seed, tol)

    array = c.array - c.array.mean(axis=0)
    rng = np.random.default_rng(seed)
    starts = [np.eye(n)[:, :subspace_dim]]
    starts += [rng.standard_normal((n, subspace_dim)) for _ in range(restarts)]

    best, best_frame = math.inf, starts[0]
    for start in starts:
        result = minimize(lambda flat: _projected_diameter(array, flat.reshape(n, subspace_dim)),
                          start.ravel(), method="Nelder-Mead",
                          options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000 * n * subspace_dim})
        if result.fun < best:
            best, best_frame = float(result.fun), result.x.reshape(n, subspace_dim)
    frame, _ = np.linalg.qr(best_frame)
    return Bound(best, False, restarts, witness=tuple(tuple(float(x) for x in col) for col in frame.T))


def projection_diameter(c: Configuration, subspace_dim: int, restarts: int = DEFAULT_RESTARTS,
                        seed: int = 0) -> float:
    return projection_bound(c, subspace_dim, restarts, seed).value


def q5_points(weight: Optional[int] = None, positions: int = 5) -> List[ExactHammingPoint]:
    """Points of (1/sqrt 2){0,1}^positions, optionally only one weight layer."""
    points = [ExactHammingPoint(mask, positions) for mask in range(1 << positions)]
    if weight is not None:
        points = [p for p in points if p.weight == weight]
    return sorted(points, key=lambda p: (p.weight, p.label))


def hamming_configuration(points: Sequence[ExactHammingPoint], label: Optional[str] = None) -> Configuration:
    return Configuration(tuple(p.to_point() for p in points), label=label,
                         names=tuple(p.label or "0" for p in points))
