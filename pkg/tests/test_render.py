import numpy as np
import pytest

from gallai.models.coloring import BlockRule, ConstantRule, GridBlockRule
from gallai.models.point import Configuration
from gallai.render import color_grid, render_rule, save_svg, window_from_region

WINDOW = ((0.0, 3.0), (0.0, 2.0))


def test_color_grid_samples_pixel_centres():
    grid = color_grid(BlockRule(1.0, 3), WINDOW, pixels_per_unit=2)
    assert grid.shape == (4, 6)
    assert grid[0].tolist() == [1, 1, 2, 2, 0, 0]
    assert np.all(grid == grid[0]), "block colors do not depend on the second coordinate"


def test_color_grid_top_row_is_the_top_of_the_window():
    grid = color_grid(GridBlockRule(1.0, 2, 2), WINDOW, pixels_per_unit=1)
    # pixel centres y = 1.5 (top row) and 0.5
    assert grid[:, 0].tolist() == [2 * 1 + 0, 2 * 1 + 1]


def test_render_rule_groups_runs_by_color():
    svg = render_rule(BlockRule(1.0, 3), WINDOW, pixels_per_unit=2)
    assert svg.startswith("<svg")
    for c in range(3):
        assert f'id="color-{c}"' in svg
    assert svg.count("<rect") == 4 * 3, "each row splits into one run per block"


def test_render_is_deterministic():
    first = render_rule(BlockRule(0.7, 4), WINDOW, pixels_per_unit=10)
    assert render_rule(BlockRule(0.7, 4), WINDOW, pixels_per_unit=10) == first


def test_overlays_and_palette():
    triangle = Configuration(((0.5, 0.5), (1.5, 0.5), (1.0, 1.5)))
    pair = Configuration(((0.5, 1.0), (2.5, 1.0)))
    svg = render_rule(ConstantRule(), WINDOW, pixels_per_unit=4, palette=["#123456"], overlays=[triangle, pair])
    assert 'fill="#123456"' in svg
    assert 'id="overlays"' in svg
    assert svg.count("<polygon") == 1
    assert svg.count("<line") == 1


def test_render_validates_input():
    with pytest.raises(ValueError):
        render_rule(ConstantRule(), ((1.0, 0.0), (0.0, 1.0)))
    with pytest.raises(ValueError):
        render_rule(ConstantRule(), WINDOW, pixels_per_unit=0)
    with pytest.raises(ValueError):
        render_rule(ConstantRule(), WINDOW, dim=1)
    with pytest.raises(ValueError):
        window_from_region(((0, 1),))


def test_render_in_higher_dimension():
    svg = render_rule(GridBlockRule(1.0, 2, 3), WINDOW, pixels_per_unit=1, dim=3)
    assert 'id="color-' in svg


def test_save_svg(tmp_path):
    path = tmp_path / "block.svg"
    save_svg(render_rule(BlockRule(1.0, 2), WINDOW, pixels_per_unit=1), path)
    assert path.read_text().startswith("<svg")
