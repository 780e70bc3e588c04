import json
import logging
import os
from fractions import Fraction
from typing import List, Sequence, Tuple

from gallai.models.coloring import ColoredPointSet, ColoringRule, rule_from_dict
from gallai.models.point import DEFAULT_TOLERANCE, Configuration, ExactHammingPoint, Tolerance

log = logging.getLogger(__name__)


def read_json(path):
    """Parse a JSON file, turning decode errors into line-anchored ValueErrors."""
    if not os.path.exists(path):
        raise FileNotFoundError(f"no such file: {path}")
    with open(path) as f:
        text = f.read()
    return parse_json(text, source=str(path))


def parse_json(text: str, source: str = "<string>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"{source}:{e.lineno}:{e.colno}: {e.msg}")


def _require(data: dict, key: str, what: str):
    if not isinstance(data, dict):
        raise ValueError(f"{what} must be a JSON object, got {type(data).__name__}")
    try:
        return data[key]
    except KeyError:
        raise ValueError(f"{what} is missing the {key!r} field")


class ConfigurationFactory:
    @staticmethod
    def make_from_dict(data: dict, tol: Tolerance = DEFAULT_TOLERANCE) -> Configuration:
        if isinstance(data, dict) and "hamming" in data:
            return ConfigurationFactory.make_from_labels(data["hamming"], data.get("positions", 5), data.get("label"))
        points = _require(data, "points", "configuration")
        if not isinstance(points, list) or not all(isinstance(p, list) for p in points):
            raise ValueError("configuration 'points' must be a list of coordinate lists")
        config = Configuration(tuple(tuple(p) for p in points), label=data.get("label"),
                               names=None if data.get("names") is None else tuple(data["names"]),
                               degenerate=bool(data.get("degenerate", False)), tol=tol)
        if "dim" in data and data["dim"] != config.dim:
            raise ValueError(f"configuration declares dim {data['dim']} but its points have dimension {config.dim}")
        return config

    @staticmethod
    def make_from_labels(labels: Sequence[str], positions: int = 5, label=None) -> Configuration:
        from gallai.geometry import hamming_configuration

        points = [ExactHammingPoint.from_label(str(name), positions) for name in labels]
        return hamming_configuration(points, label=label)

    @staticmethod
    def make_from_file_on_disk(path, tol: Tolerance = DEFAULT_TOLERANCE) -> Configuration:
        log.debug(f"reading configuration from {path}")
        return ConfigurationFactory.make_from_dict(read_json(path), tol)

    @staticmethod
    def make_from_text(text: str, tol: Tolerance = DEFAULT_TOLERANCE) -> Configuration:
        return ConfigurationFactory.make_from_dict(parse_json(text), tol)


class ColoredPointSetFactory:
    @staticmethod
    def make_from_dict(data: dict, tol: Tolerance = DEFAULT_TOLERANCE) -> ColoredPointSet:
        points = _require(data, "points", "colored point set")
        if not isinstance(points, dict):
            points = {"points": points, "label": data.get("label"), "names": data.get("names")}
        points = ConfigurationFactory.make_from_dict(points, tol)
        colors = _require(data, "colors", "colored point set")
        return ColoredPointSet(points, tuple(colors))

    @staticmethod
    def make_from_file_on_disk(path, tol: Tolerance = DEFAULT_TOLERANCE) -> ColoredPointSet:
        log.debug(f"reading colored point set from {path}")
        return ColoredPointSetFactory.make_from_dict(read_json(path), tol)


class RuleFactory:
    @staticmethod
    def make_from_dict(data: dict) -> ColoringRule:
        return rule_from_dict(data)

    @staticmethod
    def make_from_file_on_disk(path) -> ColoringRule:
        log.debug(f"reading coloring rule from {path}")
        return rule_from_dict(read_json(path))


class OffsetFactory:
    """Exact rational offsets, written as JSON numbers or strings such as "7/3"."""

    @staticmethod
    def make_from_list(values: Sequence) -> Tuple[Fraction, ...]:
        offsets: List[Fraction] = []
        for value in values:
            if isinstance(value, float):
                # 0.5 is fine, 0.1 would silently become a huge fraction
                offset = Fraction(value).limit_denominator(10**6)
            else:
                try:
                    offset = Fraction(str(value))
                except (ValueError, ZeroDivisionError):
                    raise ValueError(f"cannot read offset {value!r} as a rational number")
            offsets.append(offset)
        return tuple(sorted(set(offsets)))

    @staticmethod
    def make_from_file_on_disk(path) -> Tuple[Fraction, ...]:
        data = read_json(path)
        if isinstance(data, dict):
            data = _require(data, "offsets", "offset file")
        if not isinstance(data, list):
            raise ValueError("offsets must be a JSON list")
        return OffsetFactory.make_from_list(data)
