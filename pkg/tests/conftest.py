import json
import math

import pytest

from gallai.geometry import hamming_configuration, q5_points
from gallai.models.point import Configuration


@pytest.fixture
def unit_square():
    """
    The unit square, counter-clockwise from the origin.
    """
    return Configuration(((0, 0), (1, 0), (1, 1), (0, 1)), label="unit square")


@pytest.fixture
def unit_pair():
    return Configuration(((0, 0), (1, 0)), label="unit pair")


@pytest.fixture
def l3():
    """
    Three collinear points with unit spacing.
    """
    return Configuration(((0, 0), (1, 0), (2, 0)), label="l3")


@pytest.fixture
def equilateral():
    return Configuration(((0, 0), (1, 0), (0.5, math.sqrt(3) / 2)), label="equilateral")


@pytest.fixture
def q5_layer():
    """
    The weight-3 layer of the 5-cube as a float configuration named "123" ... "345".
    """
    return hamming_configuration(q5_points(weight=3), label="Q5(3)")


@pytest.fixture
def write_json(tmp_path):
    """
    Fixture returning a helper that writes an object as JSON under tmp_path.
    """

    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write
