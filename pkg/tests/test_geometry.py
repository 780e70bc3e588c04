import itertools
import math

import numpy as np
import pytest

from gallai.geometry import (
    affine_dimension,
    box_width,
    box_width_bound,
    circumradius,
    congruent_copies,
    diameter,
    distance,
    enclosing_ball,
    hamming_configuration,
    is_spherical,
    projection_bound,
    q5_points,
    simplex_heights,
)
from gallai.models.point import Configuration, ExactHammingPoint, Point, Tolerance
from gallai.propagate import lattice_points

TETRAHEDRON = Configuration(((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)), label="tetrahedron")


def test_distance_between_hamming_points_is_exact():
    p, q = ExactHammingPoint.from_label("123"), ExactHammingPoint.from_label("124")
    assert distance(p, q) == 1.0, "one swapped position is a unit step"
    assert p.squared_distance(q) == 1
    assert distance(p, Point((0, 0, 0, 0, 0))) == pytest.approx(math.sqrt(1.5))


def test_distance_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        distance(Point((0, 0)), Point((0, 0, 0)))


def test_diameter_and_affine_dimension(unit_square, l3):
    assert diameter(unit_square) == pytest.approx(math.sqrt(2))
    assert affine_dimension(unit_square) == 2
    assert affine_dimension(l3.embed(3)) == 1
    assert diameter(Configuration(((3, 4),))) == 0.0


@pytest.mark.parametrize(
    "points, expected",
    [
        (((0, 0), (1, 0), (1, 1), (0, 1)), 1.0),
        (((0, 0), (1, 0), (0.5, math.sqrt(3) / 2)), math.sqrt(3) / 2),
        (((0, 0), (1, 0), (1, math.sqrt(3)), (0, math.sqrt(3))), 1.0),
        (((0,), (2.5,), (1,)), 2.5),
    ],
)
def test_box_width_is_exact_in_the_plane(points, expected):
    bound = box_width_bound(Configuration(points))
    assert bound.exact, "widths in dimension <= 2 come from rotating calipers"
    assert bound.value == pytest.approx(expected, abs=1e-12)


def test_box_width_of_a_flat_set_is_zero(l3, unit_square):
    assert box_width(l3) == 0.0
    bound = box_width_bound(unit_square.embed(3))
    assert bound.exact and bound.value == 0.0


def test_box_width_of_tetrahedron_is_an_upper_bound():
    bound = box_width_bound(TETRAHEDRON, restarts=16, seed=1)
    assert not bound.exact
    assert bound.value >= 2 - 1e-9, "an upper bound never undercuts the true width"
    assert bound.value == pytest.approx(2, abs=1e-6)
    assert bound.to_dict()["kind"] == "upper bound"


def test_enclosing_ball_of_square(unit_square):
    ball = enclosing_ball(unit_square)
    assert ball.radius == pytest.approx(math.sqrt(2) / 2)
    assert ball.center.coords == pytest.approx((0.5, 0.5))
    assert 2 <= len(ball.support) <= 3


def test_circumradius_of_obtuse_triangle_is_half_the_long_side():
    obtuse = Configuration(((0, 0), (4, 0), (2, 0.5)))
    assert circumradius(obtuse) == pytest.approx(2.0)


def test_is_spherical(unit_square, l3):
    ball = is_spherical(unit_square)
    assert ball is not None
    assert ball.radius == pytest.approx(math.sqrt(2) / 2)
    assert is_spherical(l3) is None, "three collinear points lie on no circle"
    assert is_spherical(Configuration(((0, 0), (3, 0)))) is not None
    with pytest.raises(ValueError):
        is_spherical(Configuration(((0, 0),)))


def test_simplex_heights():
    triangle = Configuration(((0, 0), (1, 0), (0, 2)))
    assert simplex_heights(triangle) == pytest.approx([2.0])
    heights = simplex_heights(TETRAHEDRON)
    assert heights[0] == pytest.approx(math.sqrt(6))
    assert heights[1] == pytest.approx(4 / math.sqrt(3))
    assert simplex_heights(Configuration(((0, 0), (1, 0), (2, 0)))) == [0.0]
    with pytest.raises(ValueError):
        simplex_heights(Configuration(((0, 0), (1, 0))))


def test_congruent_copies_in_a_grid(unit_square, unit_pair):
    grid = lattice_points((3, 3))
    squares = congruent_copies(grid, unit_square)
    assert len(squares) == 4, "a 3x3 grid holds four unit squares"
    assert len(congruent_copies(grid, unit_pair)) == 12
    assert len(congruent_copies(grid, unit_square, limit=2)) == 2
    diamond = Configuration(((1, 0), (2, 1), (1, 2), (0, 1)))
    assert [m.indices for m in congruent_copies(grid, diamond)] == [(1, 3, 5, 7)]


def test_congruent_copies_assignment_respects_needle_order(unit_square):
    grid = lattice_points((2, 2))
    (match,) = congruent_copies(grid, unit_square)
    array = grid.array
    for i in range(4):
        for j in range(4):
            assert np.linalg.norm(array[match.assignment[i]] - array[match.assignment[j]]) == pytest.approx(
                np.linalg.norm(unit_square.array[i] - unit_square.array[j])
            )


def test_congruent_copies_across_dimensions(unit_square):
    cube = lattice_points((2, 2, 2))
    assert len(congruent_copies(cube, unit_square)) == 6, "one unit square per cube face"


def test_congruent_copies_honour_tolerance(unit_pair):
    haystack = Configuration(((0, 0), (1 + 1e-7, 0)))
    assert congruent_copies(haystack, unit_pair) == []
    assert len(congruent_copies(haystack, unit_pair, Tolerance(abs_eps=1e-6))) == 1


def test_projection_bound(unit_square):
    assert projection_bound(unit_square, 2).value == pytest.approx(math.sqrt(2))
    assert projection_bound(unit_square, 1).value == pytest.approx(1.0)
    plane = projection_bound(TETRAHEDRON, 2, restarts=8, seed=0)
    assert not plane.exact
    assert plane.value <= diameter(TETRAHEDRON) + 1e-9
    assert plane.value >= 2 - 1e-9, "a planar shadow is never narrower than the width"
    with pytest.raises(ValueError):
        projection_bound(unit_square, 3)


def test_q5_points():
    layer = q5_points(weight=3)
    assert [p.label for p in layer] == ["123", "124", "125", "134", "135", "145", "234", "235", "245", "345"]
    assert len(q5_points()) == 32
    config = hamming_configuration(q5_points())
    assert config.names[0] == "0"
    assert config.dim == 5


def test_configuration_rejects_bad_input():
    with pytest.raises(ValueError):
        Configuration(((0, 0), (0, 0)))
    assert len(Configuration(((0, 0), (0, 0)), degenerate=True)) == 2
    with pytest.raises(ValueError):
        Configuration(((0, 0), (1, 0, 0)))
    with pytest.raises(ValueError):
        Configuration(((0, float("nan")),))
    with pytest.raises(ValueError):
        ExactHammingPoint.from_label("126")


def test_circumradius_of_the_five_cube():
    cube = hamming_configuration(q5_points())
    assert circumradius(cube) == pytest.approx(math.sqrt(5 / 8), abs=1e-9)


def test_circumradius_lies_between_half_diameter_and_diameter():
    rng = np.random.default_rng(12)
    for _ in range(1000):
        size, dim = int(rng.integers(2, 9)), int(rng.integers(1, 5))
        c = Configuration.from_array(rng.normal(size=(size, dim)))
        r, d = circumradius(c), diameter(c)
        assert d / 2 - 1e-9 <= r <= d + 1e-9, f"radius {r} outside [{d / 2}, {d}] for {c.array.tolist()}"


def _brute_force_copies(haystack, needle):
    target = np.round(((needle.array[:, None] - needle.array[None]) ** 2).sum(axis=2))
    array = haystack.array
    found = set()
    for subset in itertools.combinations(range(len(haystack)), len(needle)):
        for perm in itertools.permutations(subset):
            sub = array[list(perm)]
            if np.array_equal(np.round(((sub[:, None] - sub[None]) ** 2).sum(axis=2)), target):
                found.add(subset)
                break
    return found


def test_congruent_copies_agree_with_brute_force():
    grid = lattice_points((4, 4)).array
    rng = np.random.default_rng(99)
    for _ in range(200):
        chosen = rng.choice(len(grid), size=int(rng.integers(4, 13)), replace=False)
        haystack = Configuration.from_array(grid[np.sort(chosen)])
        needle = haystack.subset(rng.choice(len(haystack), size=3, replace=False))
        found = {m.indices for m in congruent_copies(haystack, needle)}
        assert found == _brute_force_copies(haystack, needle), f"mismatch on {haystack.array.tolist()}"


def _orthogonal(rng, dim):
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def test_distance_obeys_the_triangle_inequality():
    rng = np.random.default_rng(21)
    for _ in range(500):
        dim = int(rng.integers(1, 6))
        p, q, r = (Point(tuple(rng.normal(size=dim))) for _ in range(3))
        assert distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12
        assert distance(p, q) == pytest.approx(distance(q, p))


def test_affine_dimension_survives_isometries_and_padding():
    rng = np.random.default_rng(22)
    for _ in range(100):
        m = int(rng.integers(0, 4))
        n = max(1, m + int(rng.integers(0, 3)))
        size = m + 1 + int(rng.integers(0, 4))
        directions = rng.normal(size=(m, n)) if m else np.zeros((0, n))
        array = rng.normal(size=n) + rng.normal(size=(size, m)) @ directions
        c = Configuration.from_array(array, degenerate=True)
        assert affine_dimension(c) == m, f"{size} points spanning {m} dimensions in E^{n}"
        moved = Configuration.from_array(array @ _orthogonal(rng, n).T + rng.normal(size=n), degenerate=True)
        assert affine_dimension(moved) == m
        assert affine_dimension(c.embed(n + 2)) == m


def test_simplex_heights_survive_isometries():
    rng = np.random.default_rng(23)
    for _ in range(100):
        dim = int(rng.integers(2, 6))
        size = int(rng.integers(3, dim + 2))
        array = rng.normal(size=(size, dim))
        moved = array @ _orthogonal(rng, dim).T + rng.normal(size=dim)
        heights = simplex_heights(Configuration.from_array(array))
        assert len(heights) == size - 2
        assert simplex_heights(Configuration.from_array(moved)) == pytest.approx(heights, abs=1e-9)
        assert simplex_heights(Configuration.from_array(array).embed(dim + 1)) == pytest.approx(heights, abs=1e-9)
