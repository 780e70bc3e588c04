"""
Exhaustive checks of the two finite lemmas behind the spherical and 5-cube results.

* The 5-cube square lemma: every coloring of the weight-3 layer of
  (1/sqrt 2){0,1}^5 has a monochromatic unit pair or a rainbow unit square.
  Colorings are enumerated as set partitions (restricted-growth strings), i.e.
  up to renaming colors, which both predicates ignore.
* The spherical l3 lemma: a coloring of squared radii N + offset with no
  monochromatic and no rainbow potential triple is impossible. This is a
  finite constraint problem over exact rational offsets.
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from gallai.geometry import hamming_configuration, q5_points
from gallai.models.point import Configuration, ExactHammingPoint
from gallai.models.verdict import CspStatus

log = logging.getLogger(__name__)

MAX_PARTITION_SIZE = 14

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class SetPartition:
    """A partition of 0..n-1 as a restricted-growth string: rgs[i] is the block of element i."""

    rgs: Tuple[int, ...]

    def __post_init__(self):
        rgs = tuple(int(x) for x in self.rgs)
        top = -1
        for i, x in enumerate(rgs):
            if x < 0 or x > top + 1:
                raise ValueError(f"{rgs} is not a restricted-growth string (position {i})")
            top = max(top, x)
        object.__setattr__(self, "rgs", rgs)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "SetPartition":
        """Canonical form of an arbitrary coloring: blocks numbered by first appearance."""
        seen: Dict = {}
        return cls(tuple(seen.setdefault(label, len(seen)) for label in labels))

    @property
    def num_blocks(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    def blocks(self) -> List[List[int]]:
        blocks: List[List[int]] = [[] for _ in range(self.num_blocks)]
        for i, b in enumerate(self.rgs):
            blocks[b].append(i)
        return blocks

    def __len__(self) -> int:
        return len(self.rgs)

    def to_dict(self) -> dict:
        return {"rgs": list(self.rgs), "blocks": self.blocks()}


def bell_number(n: int) -> int:
    """Bell number from the Bell triangle."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def _rgs_stream(n: int, prefix: Sequence[int] = ()) -> Iterator[Tuple[int, ...]]:
    """Restricted-growth strings of length n extending `prefix`, in lexicographic order."""
    a = list(prefix) + [0] * (n - len(prefix))
    if n == 0:
        return
    start = max(1, len(prefix))
    m = [0] * n  # m[i] = max(a[:i])
    for i in range(1, n):
        m[i] = max(m[i - 1], a[i - 1])
    while True:
        yield tuple(a)
        i = n - 1
        while i >= start and a[i] == m[i] + 1:
            i -= 1
        if i < start:
            return
        a[i] += 1
        top = max(m[i], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = top


def enumerate_partitions(n: int, prefix: Sequence[int] = ()) -> Iterator[SetPartition]:
    """Every partition of n elements exactly once, lexicographic in RGS order."""
    if not 1 <= n <= MAX_PARTITION_SIZE:
        raise ValueError(f"n must be in 1..{MAX_PARTITION_SIZE}, got {n}")
    if len(prefix) > n:
        raise ValueError(f"prefix {tuple(prefix)} is longer than {n}")
    if prefix:
        SetPartition(tuple(prefix))
    for rgs in _rgs_stream(n, prefix):
        yield SetPartition(rgs)


def _unit_pairs(points: Sequence[ExactHammingPoint]) -> List[Tuple[int, int]]:
    return [(i, j) for i, j in itertools.combinations(range(len(points)), 2)
            if points[i].doubled_squared_distance(points[j]) == 2]


def _unit_squares(points: Sequence[ExactHammingPoint]) -> List[Tuple[int, int, int, int]]:
    """Four sides of squared length 1 and two disjoint diagonals of squared length 2."""
    squares = []
    for quad in itertools.combinations(range(len(points)), 4):
        sides, diagonals = 0, []
        for i, j in itertools.combinations(quad, 2):
            d = points[i].doubled_squared_distance(points[j])
            if d == 2:
                sides += 1
            elif d == 4:
                diagonals.append((i, j))
            else:
                break
        else:
            if sides == 4 and len(diagonals) == 2 and not set(diagonals[0]) & set(diagonals[1]):
                squares.append(quad)
    return squares


def q5_unit_pairs(points: Optional[Sequence[ExactHammingPoint]] = None) -> List[Tuple[ExactHammingPoint, ExactHammingPoint]]:
    points = list(points) if points is not None else q5_points(weight=3)
    return [(points[i], points[j]) for i, j in _unit_pairs(points)]


def q5_unit_squares(points: Optional[Sequence[ExactHammingPoint]] = None) -> List[Tuple[ExactHammingPoint, ...]]:
    """All exact unit squares, in index order of `points` (default: the weight-3 layer)."""
    points = list(points) if points is not None else q5_points(weight=3)
    return [tuple(points[i] for i in quad) for quad in _unit_squares(points)]


def classify_partition(rgs: Sequence[int], pairs, squares) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """1 with a monochromatic pair, 2 with a rainbow square, 0 with neither."""
    for i, j in pairs:
        if rgs[i] == rgs[j]:
            return 1, (i, j)
    for a, b, c, d in squares:
        if len({rgs[a], rgs[b], rgs[c], rgs[d]}) == 4:
            return 2, (a, b, c, d)
    return 0, None


def _check_shard(n: int, prefix: Tuple[int, ...], pairs, squares) -> Tuple[int, int, int, List[Tuple[int, ...]]]:
    checked = case1 = case2 = 0
    counterexamples = []
    for rgs in _rgs_stream(n, prefix):
        checked += 1
        case, _ = classify_partition(rgs, pairs, squares)
        if case == 1:
            case1 += 1
        elif case == 2:
            case2 += 1
        else:
            counterexamples.append(rgs)
    return checked, case1, case2, counterexamples


@dataclass
class Q5Report:
    points: Tuple[str, ...]
    unit_pairs: int
    unit_squares: int
    partitions_checked: int = 0
    case1_hits: int = 0
    case2_hits: int = 0
    counterexamples: List[SetPartition] = field(default_factory=list)
    full: bool = False
    nodes: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "points": list(self.points),
            "unit_pairs": self.unit_pairs,
            "unit_squares": self.unit_squares,
            "checked": self.partitions_checked,
            "case1": self.case1_hits,
            "case2": self.case2_hits,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "full_q5": self.full,
            "nodes": self.nodes,
        }


def _shard_prefixes(n: int, depth: int) -> List[Tuple[int, ...]]:
    depth = min(depth, n)
    return list(_rgs_stream(depth)) if depth > 0 else [()]


def verify_q5_lemma(full: bool = False, workers: int = 1, shard_depth: int = 4) -> Q5Report:
    """
    Check every coloring of the weight-3 layer for a mono unit pair or a rainbow unit square.

    With `full` the 32 points of the whole cube are searched instead, by
    early-exit backtracking (see `search_q5_counterexample`). With
    `workers` > 1 the partitions are split by RGS prefix over processes.
    """
    if full:
        points = q5_points()
        # the layer that already forces the lemma goes first so the search dies early
        points.sort(key=lambda p: (p.weight != 3, p.weight, p.label))
        witness, nodes = search_q5_counterexample(points)
        report = Q5Report(tuple(p.label or "0" for p in points), len(_unit_pairs(points)),
                          len(_unit_squares(points)), full=True, nodes=nodes)
        if witness is not None:
            report.counterexamples.append(witness)
        log.info(f"full 5-cube search: {nodes} nodes, {len(report.counterexamples)} counterexamples")
        return report

    points = q5_points(weight=3)
    pairs, squares = _unit_pairs(points), _unit_squares(points)
    n = len(points)
    report = Q5Report(tuple(p.label for p in points), len(pairs), len(squares))
    log.info(f"checking all {bell_number(n)} colorings of {n} points: {len(pairs)} unit pairs, {len(squares)} unit squares")

    if workers > 1:
        prefixes = _shard_prefixes(n, shard_depth)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_shard, [n] * len(prefixes), prefixes,
                                    [pairs] * len(prefixes), [squares] * len(prefixes)))
    else:
        results = [_check_shard(n, (), pairs, squares)]

    for checked, case1, case2, counterexamples in results:
        report.partitions_checked += checked
        report.case1_hits += case1
        report.case2_hits += case2
        report.counterexamples.extend(SetPartition(rgs) for rgs in counterexamples)
    log.info(f"checked {report.partitions_checked}: case 1 {report.case1_hits}, case 2 {report.case2_hits}, "
             f"{len(report.counterexamples)} counterexamples")
    return report


def search_q5_counterexample(points: Sequence[ExactHammingPoint]) -> Tuple[Optional[SetPartition], int]:
    """
    Backtracking search for a coloring of `points` with no mono unit pair and no rainbow unit square.

    Points are colored in the given order with canonical (first-appearance)
    colors; a branch dies as soon as it closes a mono pair or a rainbow square.
    Returns the coloring found, or None, and the number of nodes visited.
    """
    points = list(points)
    n = len(points)
    earlier_neighbours: List[List[int]] = [[] for _ in range(n)]
    for i, j in _unit_pairs(points):
        earlier_neighbours[max(i, j)].append(min(i, j))
    closing: List[List[Tuple[int, ...]]] = [[] for _ in range(n)]
    for quad in _unit_squares(points):
        closing[max(quad)].append(quad)

    colors = [-1] * n
    nodes = 0

    def extend(i: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if i == n:
            return True
        for c in range(used + 1):
            if any(colors[j] == c for j in earlier_neighbours[i]):
                continue
            colors[i] = c
            if any(len({colors[q] for q in quad}) == 4 for quad in closing[i]):
                colors[i] = -1
                continue
            if extend(i + 1, max(used, c + 1)):
                return True
            colors[i] = -1
        return False

    if extend(0, 0):
        return SetPartition(tuple(colors)), nodes
    return None, nodes


def _as_number(value) -> Number:
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value)
    return float(value)


@dataclass(frozen=True)
class PotentialTriple:
    """Squared norms (y1, y2, y3) of three collinear unit-spaced points. Rationals stay exact."""

    y1: Number
    y2: Number
    y3: Number

    def __post_init__(self):
        for name in ("y1", "y2", "y3"):
            value = _as_number(getattr(self, name))
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")
            object.__setattr__(self, name, value)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in (self.y1, self.y2, self.y3))

    def mirrored(self) -> "PotentialTriple":
        return PotentialTriple(self.y3, self.y2, self.y1)

    def to_list(self) -> List[str]:
        return [str(v) for v in (self.y1, self.y2, self.y3)]


def is_potential_triple(t: PotentialTriple) -> bool:
    """
    y1 + y3 = 2 y2 + 2 and sqrt(y2) >= 2 max(|y1 - y2|, |y2 - y3|, 1).

    Only a sufficient condition; False never means the triple is unrealizable.
    The square root is avoided by squaring both sides.
    """
    spread = max(abs(t.y1 - t.y2), abs(t.y2 - t.y3), 1)
    if t.exact:
        return t.y1 + t.y3 == 2 * t.y2 + 2 and t.y2 >= 4 * spread * spread
    linear = math.isclose(float(t.y1 + t.y3), float(2 * t.y2 + 2), rel_tol=1e-12, abs_tol=1e-12)
    return linear and float(t.y2) >= 4 * float(spread) ** 2


def realize_triple(t: PotentialTriple) -> Configuration:
    """Three points of a unit-step line in the plane with squared norms y1, y2, y3."""
    if not is_potential_triple(t):
        raise ValueError(f"{t.to_list()} does not satisfy the potential-triple condition")
    y1, y2 = float(t.y1), float(t.y2)
    root = math.sqrt(y2)
    cos = (y2 + 1 - y1) / (2 * root)
    sin = math.sqrt(max(0.0, 1 - cos * cos))
    return Configuration(((root - cos, sin), (root, 0.0), (root + cos, -sin)), label="l3")


@dataclass(frozen=True)
class TripleCSP:
    """
    Offsets o (standing for squared radii N + o) and the triples among them.

    Each constraint (i, j, k), i <= k, says the colors at offsets[i],
    offsets[j], offsets[k] are neither all equal nor pairwise distinct.
    Indices may repeat, as in (N+1, N, N+1).
    """

    offsets: Tuple[Fraction, ...]
    constraints: Tuple[Tuple[int, int, int], ...]

    def constraint_offsets(self) -> List[Tuple[Fraction, Fraction, Fraction]]:
        return [(self.offsets[i], self.offsets[j], self.offsets[k]) for i, j, k in self.constraints]

    def to_dict(self) -> dict:
        return {
            "offsets": [str(o) for o in self.offsets],
            "constraints": [[str(o) for o in triple] for triple in self.constraint_offsets()],
        }


def build_triple_csp(offsets: Sequence) -> TripleCSP:
    offsets = tuple(sorted({Fraction(o) for o in offsets}))
    index = {o: i for i, o in enumerate(offsets)}
    constraints = []
    for i, o1 in enumerate(offsets):
        for j, o2 in enumerate(offsets):
            k = index.get(2 * o2 + 2 - o1)
            if k is not None and i <= k:
                constraints.append((i, j, k))
    log.debug(f"{len(constraints)} constraints over {len(offsets)} offsets")
    return TripleCSP(offsets, tuple(constraints))


def violates(colors: Sequence[int], constraint: Tuple[int, int, int]) -> bool:
    distinct = len({colors[constraint[0]], colors[constraint[1]], colors[constraint[2]]})
    return distinct == 1 or distinct == 3


def check_assignment(csp: TripleCSP, colors: Sequence[int]) -> List[Tuple[int, int, int]]:
    """Constraints violated by a full coloring of the offsets."""
    if len(colors) != len(csp.offsets):
        raise ValueError(f"{len(colors)} colors for {len(csp.offsets)} offsets")
    return [c for c in csp.constraints if violates(colors, c)]


@dataclass(frozen=True)
class CspResult:
    status: CspStatus
    witness: Optional[SetPartition]
    nodes: int
    sufficient_n: int

    def to_dict(self, csp: Optional[TripleCSP] = None) -> dict:
        data = {
            "status": self.status.value,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "nodes": self.nodes,
            "sufficient_N": self.sufficient_n,
        }
        if csp is not None:
            data["offsets"] = len(csp.offsets)
            data["constraints"] = len(csp.constraints)
        return data


def solve_triple_csp(csp: TripleCSP) -> CspResult:
    """
    Backtracking over canonical colorings with forward checking.

    Variables go in decreasing constraint degree; each new variable may take a
    used color or the next fresh one, so colorings are explored up to renaming.
    After every assignment each constraint left with one open variable is
    checked for a surviving value.
    """
    n = len(csp.offsets)
    touching: List[List[Tuple[int, int, int]]] = [[] for _ in range(n)]
    for constraint in csp.constraints:
        for v in set(constraint):
            touching[v].append(constraint)
    order = sorted(range(n), key=lambda v: (-len(touching[v]), v))
    colors = [-1] * n
    nodes = 0

    def consistent(v: int) -> bool:
        for constraint in touching[v]:
            if all(colors[x] >= 0 for x in constraint) and violates(colors, constraint):
                return False
        return True

    def has_support(u: int, used: int) -> bool:
        for c in range(used + 1):
            colors[u] = c
            ok = consistent(u)
            colors[u] = -1
            if ok:
                return True
        return False

    def forward_check(v: int, used: int) -> bool:
        for constraint in touching[v]:
            open_vars = {x for x in constraint if colors[x] < 0}
            if len(open_vars) == 1 and not has_support(open_vars.pop(), used):
                return False
        return True

    def extend(depth: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if depth == n:
            return True
        v = order[depth]
        for c in range(used + 1):
            colors[v] = c
            grown = max(used, c + 1)
            if consistent(v) and forward_check(v, grown) and extend(depth + 1, grown):
                return True
            colors[v] = -1
        return False

    bound = sufficient_n(csp)
    if extend(0, 0):
        log.info(f"satisfiable after {nodes} nodes")
        return CspResult(CspStatus.SAT, SetPartition.from_labels(colors), nodes, bound)
    log.info(f"unsatisfiable after {nodes} nodes")
    return CspResult(CspStatus.UNSAT, None, nodes, bound)


def sufficient_n(csp: TripleCSP) -> int:
    """
    Least integer N with N + o2 >= 4 D^2 for every constraint, where D is the
    largest spread max(|o1 - o2|, |o2 - o3|, 1) over the constraints.
    """
    if not csp.offsets:
        return 4
    spread = max((max(abs(a - b), abs(b - c), 1) for a, b, c in csp.constraint_offsets()), default=1)
    need = 4 * spread * spread - min(csp.offsets)
    return max(0, math.ceil(need))


def potential_triples_for(n: int, csp: TripleCSP) -> List[Tuple[PotentialTriple, bool]]:
    """Every constraint as a concrete triple at radius offset N = n, with its potential flag."""
    result = []
    for a, b, c in csp.constraint_offsets():
        triple = PotentialTriple(n + a, n + b, n + c)
        result.append((triple, is_potential_triple(triple)))
    return result


def modular_witness(offsets: Sequence, modulus: int = 3) -> Dict[Fraction, int]:
    """
    The periodic coloring N + k -> k mod modulus on the integer offsets.

    With modulus 3 no integer triple is monochromatic or rainbow, so the
    integer offsets alone never force a contradiction.
    """
    return {Fraction(o): int(Fraction(o)) % modulus for o in offsets if Fraction(o).denominator == 1}


def _fractions(values) -> Tuple[Fraction, ...]:
    return tuple(sorted({Fraction(v) for v in values}))


OPENING_OFFSETS = _fractions([0, 1, 2])

# k, k + 1/3, k + 2/3 for k = 0..6, and 1/2; the builtin proof set
THIRDS_GRID_OFFSETS = _fractions([Fraction(3 * k + r, 3) for k in range(7) for r in range(3)] + [Fraction(1, 2)])

# the thirds grid plus the remaining half steps and 5/6
EXTENDED_OFFSETS = _fractions(
    list(THIRDS_GRID_OFFSETS) + [Fraction(1, 2), Fraction(3, 2), Fraction(5, 2), Fraction(7, 2), Fraction(5, 6)]
)


def q5_configuration(weight: Optional[int] = 3) -> Configuration:
    return hamming_configuration(q5_points(weight), label="Q5" if weight is None else f"Q5({weight})")
