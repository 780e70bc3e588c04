import itertools

import numpy as np
import pytest

from gallai.models.point import Configuration
from gallai.propagate import (
    AllowedSetMap,
    bisector_chain,
    build_instance,
    flood_fill_two_point,
    forcing_report,
    lattice_points,
    propagate_fixpoint,
)

RIGHT_ISOSCELES = Configuration(((0, 0, 0), (1, 0, 0), (0, 1, 0)), label="right isosceles")


def _pair_1d():
    return Configuration(((0,), (1,)), label="unit pair")


@pytest.fixture
def line_instance():
    """
    Integer points 0..10 on a line, unit pairs forbidden to be rainbow, 0 seeded with color 0.
    """
    return build_instance(lattice_points((11,)), _pair_1d(), 3, [(0, 0)])


@pytest.fixture
def slab_instance():
    """
    A 5x5x2 lattice with the origin seeded 0 and (1, 0, 0) seeded 1.
    """
    points = lattice_points((5, 5, 2))
    return build_instance(points, RIGHT_ISOSCELES, 3, [(0, 0), (10, 1)])


def test_seed_spreads_along_a_line(line_instance):
    assert len(line_instance.constraints) == 10
    result = propagate_fixpoint(line_instance)
    assert not result.contradiction
    assert result.converged
    assert all(result.map.allowed(i) == [0] for i in range(11)), "every point is joined to 0 by unit steps"
    assert result.rounds == 11, "one new point per round plus the round that changes nothing"
    assert result.prunings == 20


def test_unseeded_instance_is_already_stable():
    instance = build_instance(lattice_points((11,)), _pair_1d(), 3)
    result = propagate_fixpoint(instance)
    assert result.prunings == 0
    assert result.rounds == 1
    assert result.map == AllowedSetMap.full(11, 3)


def test_two_seeds_restrict_the_right_angle_apexes(slab_instance):
    points = slab_instance.points.array
    result = propagate_fixpoint(slab_instance)
    assert not result.contradiction
    restricted = sorted(tuple(points[i]) for i in range(len(points)) if result.map.cardinality(i) == 2)
    assert restricted == [(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)]
    assert result.rounds == 2
    report = forcing_report(slab_instance, result, slab_axis=0, slab_value=0.0)
    assert report["slab"]["points"] == 10
    assert report["slab"]["at_most_two"] == 3
    assert report["slab"]["at_most_two_fraction"] == pytest.approx(0.3)
    assert report["cardinality_histogram"] == {"1": 2, "2": 4, "3": 44}


def test_propagation_only_shrinks(slab_instance):
    result = propagate_fixpoint(slab_instance, record_history=True)
    assert len(result.history) == result.rounds + 1
    for before, after in zip(result.history, result.history[1:]):
        assert after.issubset(before), "allowed sets never grow"


def test_fixpoint_is_idempotent(line_instance):
    first = propagate_fixpoint(line_instance)
    again = propagate_fixpoint(line_instance, initial=first.map)
    assert again.map == first.map
    assert again.prunings == 0
    assert again.rounds == 1


def test_fixpoint_does_not_depend_on_constraint_order(slab_instance):
    reference = propagate_fixpoint(slab_instance).map
    rng = np.random.default_rng(4)
    for _ in range(5):
        order = rng.permutation(len(slab_instance.constraints))
        assert propagate_fixpoint(slab_instance, order=order).map == reference


def test_order_must_be_a_permutation(line_instance):
    with pytest.raises(ValueError):
        propagate_fixpoint(line_instance, order=[0, 0, 1])


def test_pruned_colors_appear_in_no_solution():
    points = lattice_points((2, 3))
    k2 = Configuration(((0, 0), (1, 0), (0, 1)))
    instance = build_instance(points, k2, 3, [(0, 0), (3, 1)])
    result = propagate_fixpoint(instance)
    reachable = [0] * len(points)
    for colors in itertools.product(range(3), repeat=len(points)):
        if any(colors[i] != c for i, c in instance.seeds):
            continue
        if any(len({colors[i] for i in con.indices}) == 3 for con in instance.constraints):
            continue
        for i, c in enumerate(colors):
            reachable[i] |= 1 << c
    for i in range(len(points)):
        assert reachable[i] & ~result.map.masks[i] == 0, f"point {i} lost a color used by a solution"


def test_contradiction_is_a_result(unit_pair):
    instance = build_instance(Configuration(((0, 0), (1, 0))), unit_pair, 2, [(0, 0), (1, 1)])
    result = propagate_fixpoint(instance)
    assert result.contradiction
    assert result.map.contradictory
    assert result.to_dict()["contradiction"] is True


def test_max_rounds_stops_early(line_instance):
    result = propagate_fixpoint(line_instance, max_rounds=3)
    assert result.rounds == 3
    assert not result.converged
    assert result.map.allowed(3) == [0]
    assert result.map.cardinality(4) == 3


@pytest.mark.parametrize(
    "r, k2, seeds",
    [
        (0, ((0, 0), (1, 0)), []),
        (3, ((0, 0),), []),
        (3, ((0, 0), (1, 0)), [(9, 0)]),
        (3, ((0, 0), (1, 0)), [(0, 3)]),
        (3, ((0, 0), (1, 0)), [(0, 0), (0, 1)]),
    ],
)
def test_build_instance_validates(r, k2, seeds):
    with pytest.raises(ValueError):
        build_instance(lattice_points((2, 2)), Configuration(k2), r, seeds)


def test_flood_fill(unit_pair):
    flood = flood_fill_two_point(Configuration(((0, 0), (1, 0), (5, 0), (6, 0))), 0, 1.0)
    assert flood.num_components == 2
    assert flood.forced == (0, 1)
    line = flood_fill_two_point(lattice_points((11,)), 0, 1.0)
    assert line.num_components == 1
    with pytest.raises(ValueError):
        flood_fill_two_point(lattice_points((3,)), 5, 1.0)


def test_bisector_chain_connects_everything():
    chain = bisector_chain(1.0, 1.5, 6)
    assert len(chain) == 13
    assert chain.names[0] == "x0" and chain.names[-1] == "y6"
    array = chain.array
    assert np.linalg.norm(array[7] - array[0]) == pytest.approx(1.0)
    assert np.linalg.norm(array[7] - array[1]) == pytest.approx(1.0)
    assert flood_fill_two_point(chain, 0, 1.0).num_components == 1
    instance = build_instance(chain, Configuration(((0, 0), (1, 0))), 4, [(0, 2)])
    result = propagate_fixpoint(instance)
    assert all(result.map.allowed(i) == [2] for i in range(len(chain)))


@pytest.mark.parametrize("d, step, count", [(0, 1, 1), (1, 2.5, 1), (1, 1, 0)])
def test_bisector_chain_validates(d, step, count):
    with pytest.raises(ValueError):
        bisector_chain(d, step, count)


def test_lattice_points_order():
    points = lattice_points((2, 3), spacing=0.5, origin=(1, 1))
    assert len(points) == 6
    assert points.array[0].tolist() == [1, 1]
    assert points.array[1].tolist() == [1, 1.5]
    assert points.array[3].tolist() == [1.5, 1]
    with pytest.raises(ValueError):
        lattice_points((0, 2))


def _random_instances(count, seed):
    rng = np.random.default_rng(seed)
    grid = lattice_points((3, 3, 2)).array
    shapes = [Configuration(((0, 0, 0), (1, 0, 0))), RIGHT_ISOSCELES]
    for _ in range(count):
        size = int(rng.integers(5, 9))
        points = Configuration.from_array(grid[np.sort(rng.choice(len(grid), size=size, replace=False))])
        r = int(rng.integers(2, 4))
        seeded = rng.choice(size, size=int(rng.integers(1, 3)), replace=False)
        seeds = [(int(i), int(rng.integers(0, r))) for i in seeded]
        yield build_instance(points, shapes[int(rng.integers(0, 2))], r, seeds)


def test_random_instances_are_monotone_idempotent_and_confluent():
    rng = np.random.default_rng(8)
    for instance in _random_instances(20, seed=1):
        result = propagate_fixpoint(instance, record_history=True)
        for before, after in zip(result.history, result.history[1:]):
            assert after.issubset(before)
        if not result.contradiction:
            assert propagate_fixpoint(instance, initial=result.map).map == result.map
        for _ in range(10):
            order = rng.permutation(len(instance.constraints))
            assert propagate_fixpoint(instance, order=order).map == result.map


def test_random_instances_are_sound():
    for instance in _random_instances(10, seed=2):
        result = propagate_fixpoint(instance)
        n = len(instance.points)
        reachable = [0] * n
        for colors in itertools.product(range(instance.r), repeat=n):
            if any(colors[i] != c for i, c in instance.seeds):
                continue
            if any(len({colors[i] for i in con.indices}) == len(con.indices) for con in instance.constraints):
                continue
            for i, c in enumerate(colors):
                reachable[i] |= 1 << c
        for i in range(n):
            assert reachable[i] & ~result.map.masks[i] == 0, f"point {i} lost a color used by a solution"
