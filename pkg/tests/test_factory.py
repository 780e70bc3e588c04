from fractions import Fraction

import pytest

from gallai.models.coloring import BlockRule
from gallai.models.factory import (
    ColoredPointSetFactory,
    ConfigurationFactory,
    OffsetFactory,
    RuleFactory,
    parse_json,
)


def test_configuration_from_dict():
    config = ConfigurationFactory.make_from_dict({"dim": 2, "points": [[0, 0], [1, 0]], "label": "pair"})
    assert len(config) == 2
    assert config.label == "pair"
    assert config.to_dict()["points"] == [[0.0, 0.0], [1.0, 0.0]]


def test_configuration_from_hamming_labels():
    config = ConfigurationFactory.make_from_dict({"hamming": ["123", "124"], "label": "edge"})
    assert config.names == ("123", "124")
    assert config.dim == 5


@pytest.mark.parametrize(
    "data",
    [
        {"dim": 3, "points": [[0, 0], [1, 0]]},
        {"points": [[0, 0], [0, 0]]},
        {"points": [0, 1]},
        {"label": "nothing"},
        [[0, 0]],
    ],
)
def test_configuration_from_dict_rejects(data):
    with pytest.raises(ValueError):
        ConfigurationFactory.make_from_dict(data)


def test_configuration_from_file(write_json):
    path = write_json("square.json", {"points": [[0, 0], [1, 0], [1, 1], [0, 1]]})
    assert len(ConfigurationFactory.make_from_file_on_disk(path)) == 4
    with pytest.raises(FileNotFoundError):
        ConfigurationFactory.make_from_file_on_disk(path + ".missing")


def test_malformed_json_is_line_anchored(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"points": [[0, 0],\n  [1, 0]')
    with pytest.raises(ValueError, match=r"broken\.json:2:"):
        ConfigurationFactory.make_from_file_on_disk(str(path))
    with pytest.raises(ValueError, match="<string>:1:1"):
        parse_json("")


def test_colored_point_set_from_dict():
    s = ColoredPointSetFactory.make_from_dict({"points": [[0, 0], [1, 0]], "colors": [0, 1]})
    assert s.colors == (0, 1)
    nested = ColoredPointSetFactory.make_from_dict({"points": {"hamming": ["123", "345"]}, "colors": [2, 2]})
    assert nested.points.names == ("123", "345")
    with pytest.raises(ValueError):
        ColoredPointSetFactory.make_from_dict({"points": [[0, 0]]})


def test_rule_from_file(write_json):
    path = write_json("block.json", {"variant": "Block", "a": 1.5, "num_colors": 3})
    assert RuleFactory.make_from_file_on_disk(path) == BlockRule(1.5, 3)


def test_offsets():
    assert OffsetFactory.make_from_list([2, "1/3", 0.5, 2]) == (Fraction(1, 3), Fraction(1, 2), Fraction(2))
    assert OffsetFactory.make_from_list([0.1]) == (Fraction(1, 10),)
    with pytest.raises(ValueError):
        OffsetFactory.make_from_list(["one"])
    with pytest.raises(ValueError):
        OffsetFactory.make_from_list(["1/0"])


def test_offsets_from_file(write_json):
    assert OffsetFactory.make_from_file_on_disk(write_json("o.json", ["0", "1", "2"])) == (0, 1, 2)
    assert OffsetFactory.make_from_file_on_disk(write_json("p.json", {"offsets": [1, 0]})) == (0, 1)
    with pytest.raises(ValueError):
        OffsetFactory.make_from_file_on_disk(write_json("q.json", {"values": [1]}))
