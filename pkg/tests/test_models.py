"""Tests for the shared data models."""
import numpy as np
import pytest

from tda_models import (
    Diagram,
    Direction,
    FormatError,
    Grid,
    GridField,
    Landscape,
    LandscapeLevel,
    PointCloud,
    TDAError,
    ValidationError,
)


class TestPointCloud:
    """Tests for PointCloud."""

    def test_shape_properties(self):
        cloud = PointCloud([[0.0, 1.0, 2.0], [3.0, 4.0, 5.0]])
        assert cloud.n == 2
        assert cloud.dim == 3
        assert len(cloud) == 2

    @pytest.mark.parametrize("points", [[1.0, 2.0], [[0.0, np.nan]], [[np.inf, 0.0]]])
    def test_rejects_bad_points(self, points):
        with pytest.raises(ValidationError):
            PointCloud(points)

    def test_dict_round_trip(self):
        cloud = PointCloud([[0.5, -1.0]])
        assert PointCloud.from_dict(cloud.to_dict()) == cloud


class TestGrid:
    """Tests for Grid."""

    def test_geometry(self):
        grid = Grid((0.0, -1.0), (2.0, 1.0), (4, 2))
        assert grid.shape == (5, 3)
        assert grid.vertex_count == 15
        assert grid.spacing.tolist() == [0.5, 1.0]
        assert grid.cell_volume == 0.5

    def test_vertices_are_row_major(self):
        grid = Grid((0.0, 0.0), (1.0, 2.0), (1, 2))
        assert grid.vertices().tolist() == [
            [0.0, 0.0], [0.0, 1.0], [0.0, 2.0],
            [1.0, 0.0], [1.0, 1.0], [1.0, 2.0],
        ]

    def test_padded_around(self):
        cloud = PointCloud([[0.0, 1.0], [2.0, 3.0]])
        grid = Grid.padded_around(cloud, 0.5, [10, 10])
        assert grid.lower == (-0.5, 0.5)
        assert grid.upper == (2.5, 3.5)

    @pytest.mark.parametrize("lower,upper,resolution", [
        ((0.0,), (0.0,), (2,)),
        ((0.0, 0.0), (1.0,), (2, 2)),
        ((0.0,), (1.0,), (0,)),
        ((), (), ()),
    ])
    def test_rejects_invalid(self, lower, upper, resolution):
        with pytest.raises(ValidationError):
            Grid(lower, upper, resolution)

    def test_from_dict_reports_format_error(self):
        with pytest.raises(FormatError):
            Grid.from_dict({'lower': [0.0]})


class TestGridField:
    """Tests for GridField."""

    def test_as_array(self):
        grid = Grid((0.0, 0.0), (1.0, 1.0), (1, 2))
        field = GridField(grid, np.arange(6.0))
        assert field.as_array().shape == (2, 3)
        assert field.as_array()[1, 0] == 3.0

    def test_rejects_wrong_length(self):
        with pytest.raises(ValidationError, match="vertices"):
            GridField(Grid((0.0,), (1.0,), (2,)), [1.0, 2.0])

    def test_dict_round_trip(self):
        field = GridField(Grid((0.0,), (1.0,), (2,)), [0.1, 0.2, 0.3])
        assert GridField.from_dict(field.to_dict()) == field

    def test_missing_values(self):
        with pytest.raises(FormatError):
            GridField.from_dict(Grid((0.0,), (1.0,), (2,)).to_dict())


class TestDiagram:
    """Tests for Diagram invariants."""

    def test_superlevel_order(self):
        with pytest.raises(ValidationError, match="death <= birth"):
            Diagram([1.0], [2.0], [0], Direction.SUPERLEVEL, 5.0)

    def test_sublevel_order(self):
        with pytest.raises(ValidationError, match="birth <= death"):
            Diagram([2.0], [1.0], [0], Direction.SUBLEVEL, 5.0)

    def test_bound(self):
        with pytest.raises(ValidationError):
            Diagram([6.0], [1.0], [0], Direction.SUPERLEVEL, 5.0)
        with pytest.raises(ValidationError):
            Diagram.empty(Direction.SUBLEVEL, 0.0)

    def test_negative_values(self):
        with pytest.raises(ValidationError):
            Diagram([-1.0], [1.0], [0], Direction.SUBLEVEL, 5.0)

    def test_select_and_half_lives(self):
        diagram = Diagram([3.0, 2.0, 4.0], [1.0, 1.5, 0.0], [0, 1, 0], "superlevel", 4.0)
        assert diagram.direction is Direction.SUPERLEVEL
        assert diagram.select(0).points() == [(3.0, 1.0, 0), (4.0, 0.0, 0)]
        assert diagram.half_lives().tolist() == [1.0, 0.25, 2.0]

    def test_dict_round_trip(self):
        diagram = Diagram([1.0], [1.5], [1], Direction.SUBLEVEL, 2.0)
        assert Diagram.from_dict(diagram.to_dict()) == diagram

    def test_malformed_dict(self):
        with pytest.raises(FormatError):
            Diagram.from_dict({'points': [[1.0]], 'direction': 'sublevel', 'bound': 1.0})

    def test_errors_share_a_base(self):
        assert issubclass(ValidationError, TDAError)
        assert issubclass(ValidationError, ValueError)
        assert issubclass(FormatError, TDAError)


class TestLandscapeModels:
    """Tests for LandscapeLevel and Landscape."""

    def test_evaluate_outside_support(self):
        level = LandscapeLevel([1.0, 2.0, 3.0], [0.0, 1.0, 0.0])
        assert level(0.0) == 0.0
        assert level(5.0) == 0.0
        assert level(1.5) == 0.5

    def test_rejects_unsorted(self):
        with pytest.raises(ValidationError):
            LandscapeLevel([2.0, 1.0], [0.0, 0.0])

    def test_scaled(self):
        level = LandscapeLevel([0.0, 1.0], [0.0, 1.0]).scaled(3.0)
        assert level.values.tolist() == [0.0, 3.0]

    def test_level_lookup(self):
        landscape = Landscape([LandscapeLevel([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])], 2.0)
        assert landscape.K == 1
        assert landscape.level(2).breakpoints() == [(0.0, 0.0), (2.0, 0.0)]
        with pytest.raises(ValidationError):
            landscape.level(0)

    def test_dict_round_trip(self):
        landscape = Landscape([LandscapeLevel([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])], 2.0)
        restored = Landscape.from_dict(landscape.to_dict())
        assert restored.bound == 2.0
        assert restored.level(1).breakpoints() == landscape.level(1).breakpoints()
