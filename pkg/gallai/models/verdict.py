from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from gallai.models.point import DEFAULT_TOLERANCE, Configuration, Match, Tolerance


class PatternMode(Enum):
    MONOCHROMATIC = "mono"
    RAINBOW = "rainbow"

    @classmethod
    def make(cls, mode):
        if mode in ("mono", "monochromatic"):
            return PatternMode.MONOCHROMATIC
        elif mode == "rainbow":
            return PatternMode.RAINBOW
        else:
            raise ValueError(f"unknown pattern mode {mode!r}; expected 'mono' or 'rainbow'")


class VerdictKind(Enum):
    MONO_FOUND = "mono_found"
    RAINBOW_FOUND = "rainbow_found"
    NEITHER = "neither"


class CspStatus(Enum):
    SAT = "sat"
    UNSAT = "unsat"


@dataclass(frozen=True)
class PatternQuery:
    target: Configuration
    mode: PatternMode
    tol: Tolerance = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.mode is PatternMode.RAINBOW and len(self.target) < 2:
            raise ValueError("a rainbow query needs a target with at least two points")


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    match: Optional[Match] = None

    def to_dict(self, haystack: Optional[Configuration] = None) -> dict:
        return {
            "verdict": self.kind.value,
            "match": None if self.match is None else self.match.to_dict(haystack),
        }


@dataclass(frozen=True)
class ViolationReport:
    """
    Outcome of sampling random congruent placements of a pattern under a rule.

    `clean` is True when no placement showed the forbidden predicate; otherwise
    the witness fields describe the first offending placement, already re-checked.
    """

    rule: dict
    mode: PatternMode
    trials_run: int
    seed: int
    batch_size: int
    witness_trial: Optional[int] = None
    witness_points: Optional[Tuple[Tuple[float, ...], ...]] = None
    witness_colors: Optional[Tuple[int, ...]] = None

    @property
    def clean(self) -> bool:
        return self.witness_points is None

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "pattern_kind": self.mode.value,
            "clean": self.clean,
            "trials": self.trials_run,
            "seed": self.seed,
            "batch_size": self.batch_size,
            "witness": None
            if self.clean
            else {
                "trial": self.witness_trial,
                "points": [list(p) for p in self.witness_points],
                "colors": list(self.witness_colors),
            },
        }


@dataclass(frozen=True)
class GallaiReport:
    mono: ViolationReport
    rainbow: ViolationReport

    @property
    def clean(self) -> bool:
        return self.mono.clean and self.rainbow.clean

    def to_dict(self) -> dict:
        return {"clean": self.clean, "mono": self.mono.to_dict(), "rainbow": self.rainbow.to_dict()}


@dataclass
class CheckResult:
    """What a check operator hands back to the suite."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details, "errors": self.errors}
