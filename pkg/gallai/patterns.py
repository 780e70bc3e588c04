"""
Monochromatic and rainbow copies inside an explicitly colored finite point set.
"""

import logging
from typing import List, Optional

from gallai.geometry import congruent_copies
from gallai.models.coloring import ColoredPointSet
from gallai.models.point import DEFAULT_TOLERANCE, Configuration, DistanceProfile, Match, Tolerance
from gallai.models.verdict import PatternMode, PatternQuery, Verdict, VerdictKind

log = logging.getLogger(__name__)


def find_mono(s: ColoredPointSet, X: Configuration, tol: Tolerance = DEFAULT_TOLERANCE,
              limit: Optional[int] = None) -> List[Match]:
    """Copies of X whose points share one color, searched one color class at a time."""
    found: List[Match] = []
    for color, members in sorted(s.classes().items()):
        if len(members) < len(X):
            continue
        remaining = None if limit is None else limit - len(found)
        for match in congruent_copies(s.points.subset(members), X, tol, limit=remaining):
            indices = tuple(sorted(members[i] for i in match.indices))
            assignment = tuple(members[i] for i in match.assignment)
            found.append(Match(indices, assignment, match.profile))
            if limit is not None and len(found) >= limit:
                return sorted(found, key=lambda m: m.indices)
    return sorted(found, key=lambda m: m.indices)


def find_rainbow(s: ColoredPointSet, P: Configuration, tol: Tolerance = DEFAULT_TOLERANCE,
                 limit: Optional[int] = None) -> List[Match]:
    """Copies of P whose points carry pairwise distinct colors."""
    if s.num_colors < len(P):
        return []
    colors = s.colors

    def distinct_color(placed, candidate):
        return all(colors[i] != colors[candidate] for i in placed)

    return congruent_copies(s.points, P, tol, prune=distinct_color, limit=limit)


def find(s: ColoredPointSet, query: PatternQuery, limit: Optional[int] = None) -> List[Match]:
    if query.mode is PatternMode.MONOCHROMATIC:
        return find_mono(s, query.target, query.tol, limit)
    return find_rainbow(s, query.target, query.tol, limit)


def recheck(s: ColoredPointSet, target: Configuration, match: Match, mode: PatternMode,
            tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Independent check of a match: congruent to the target and satisfying the color predicate."""
    if len(set(match.indices)) != len(target):
        return False
    profile = DistanceProfile.of_array(s.points.array[list(match.indices)])
    if not profile.matches(DistanceProfile.of(target), tol):
        return False
    colors = [s.colors[i] for i in match.indices]
    if mode is PatternMode.MONOCHROMATIC:
        return len(set(colors)) == 1
    return len(set(colors)) == len(colors)


def gallai_check(s: ColoredPointSet, X: Configuration, P: Configuration,
                 tol: Tolerance = DEFAULT_TOLERANCE) -> Verdict:
    """
    First witness of "mono X or rainbow P" on the finite set.

    NEITHER means the colored set is a finite counterexample to the arrow.
    """
    mono = find_mono(s, X, tol, limit=1)
    if mono:
        return Verdict(VerdictKind.MONO_FOUND, mono[0])
    rainbow = find_rainbow(s, P, tol, limit=1)
    if rainbow:
        return Verdict(VerdictKind.RAINBOW_FOUND, rainbow[0])
    log.debug(f"no mono {X.label or 'X'} and no rainbow {P.label or 'P'} among {len(s.points)} points")
    return Verdict(VerdictKind.NEITHER)
