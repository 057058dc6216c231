"""Tests for exact persistence landscapes."""
import math

import numpy as np
import pytest

from landscape import (
    diagram_to_landscape,
    landscape_eval,
    landscape_norm,
    landscape_sup_diff,
    mean_landscape,
    triangle,
)
from tda_models import Diagram, Direction, LandscapeLevel, ValidationError
from tests.helpers import SQRT2, random_superlevel_diagram, sublevel, superlevel


def direct_kmax(diagram: Diagram, k: int, z: float) -> float:
    """k-th largest tent value at z, computed point by point."""
    tents = sorted((triangle(b, d, z) for b, d in zip(diagram.births, diagram.deaths)), reverse=True)
    return tents[k - 1] if k <= len(tents) else 0.0


class TestTriangle:
    """Tests for the tent function."""

    @pytest.mark.parametrize("z,expected", [(2.0, 2.0), (5.0, 0.0), (1.0, 1.0), (3.0, 1.0), (-1.0, 0.0)])
    def test_superlevel_point(self, z, expected):
        assert triangle(4.0, 0.0, z) == expected

    def test_sublevel_point_is_symmetric(self):
        assert triangle(0.0, 4.0, 1.0) == triangle(4.0, 0.0, 1.0)


class TestDiagramToLandscape:
    """Tests for diagram_to_landscape."""

    def test_single_point(self):
        landscape = diagram_to_landscape(superlevel([(4.0, 0.0, 0)], bound=4.0), 1)
        assert landscape.K == 1
        assert landscape.level(1).breakpoints() == [(0.0, 0.0), (2.0, 2.0), (4.0, 0.0)]

    def test_two_points(self):
        diagram = superlevel([(4.0, 0.0, 0), (3.0, 1.0, 0)], bound=4.0)
        landscape = diagram_to_landscape(diagram, 2)
        assert landscape_eval(landscape, 1, 2.0) == 2.0
        assert landscape_eval(landscape, 2, 2.0) == 1.0
        for k in (1, 2):
            level = landscape.level(k)
            for z, value in zip(level.z, level.values):
                assert abs(value - direct_kmax(diagram, k, z)) <= 1e-9

    def test_matches_dense_grid(self):
        diagram = superlevel([(4.0, 0.0, 0), (3.0, 1.0, 0), (3.5, 2.5, 0)], bound=4.0)
        landscape = diagram_to_landscape(diagram, 3)
        grid = np.arange(0.0, 4.0 + 1e-12, 1e-3)
        for k in (1, 2, 3):
            expected = np.array([direct_kmax(diagram, k, z) for z in grid])
            assert np.max(np.abs(landscape.level(k).evaluate(grid) - expected)) <= 1e-9

    def test_empty_diagram(self):
        landscape = diagram_to_landscape(Diagram.empty(Direction.SUPERLEVEL, 3.0), 2)
        for k in (1, 2, 3):
            assert np.all(landscape.level(k).values == 0.0)

    def test_levels_beyond_points_are_zero(self):
        landscape = diagram_to_landscape(superlevel([(4.0, 0.0, 0)], bound=4.0), 3)
        assert np.all(landscape.level(3).values == 0.0)
        assert landscape_eval(landscape, 7, 2.0) == 0.0

    def test_sublevel_matches_swapped_superlevel(self):
        low = diagram_to_landscape(sublevel([(1.0, SQRT2, 1)], bound=2.0), 1)
        high = diagram_to_landscape(superlevel([(SQRT2, 1.0, 1)], bound=2.0), 1)
        assert np.array_equal(low.level(1).z, high.level(1).z)
        assert np.array_equal(low.level(1).values, high.level(1).values)

    def test_repeated_point_fills_two_levels(self):
        landscape = diagram_to_landscape(superlevel([(4.0, 0.0, 0), (4.0, 0.0, 0)], bound=4.0), 3)
        assert landscape.level(2).breakpoints() == landscape.level(1).breakpoints()
        assert np.all(landscape.level(3).values == 0.0)

    @pytest.mark.parametrize("m", [50, 200, 800])
    def test_breakpoints_grow_linearly(self, rng, m):
        lo = rng.uniform(0.0, 5.0, m)
        hi = lo + rng.uniform(2.0, 5.0, m)
        diagram = sublevel([(b, d, 1) for b, d in zip(lo, hi)], bound=10.0)
        landscape = diagram_to_landscape(diagram, 3)
        for k in (1, 2, 3):
            level = landscape.level(k)
            assert len(level.z) <= 3 * m + 2
            for z in rng.uniform(0.0, 10.0, 20):
                assert abs(landscape_eval(landscape, k, z) - direct_kmax(diagram, k, z)) <= 1e-9

    def test_rejects_zero_levels(self):
        with pytest.raises(ValidationError):
            diagram_to_landscape(superlevel([(4.0, 0.0, 0)]), 0)


class TestLandscapeProperties:
    """Structural properties on random diagrams."""

    def test_property_suite(self, rng):
        bound = 10.0
        for _ in range(500):
            diagram = random_superlevel_diagram(rng, 8, bound=bound)
            landscape = diagram_to_landscape(diagram, 3)
            zs = np.unique(np.concatenate([landscape.level(k).z for k in (1, 2, 3)]))
            previous = None
            for k in (1, 2, 3):
                level = landscape.level(k)
                assert np.all(np.abs(np.diff(level.values)) <= np.diff(level.z) + 1e-12)
                assert np.all(level.values >= 0.0)
                assert np.all(level.values <= bound / 2.0)
                assert level.z[0] >= 0.0 and level.z[-1] <= bound
                assert level.values[0] == 0.0 and level.values[-1] == 0.0
                current = level.evaluate(zs)
                if previous is not None:
                    assert np.all(previous >= current - 1e-12)
                previous = current
                for z in rng.uniform(-1.0, bound + 1.0, 100):
                    assert abs(landscape_eval(landscape, k, z) - direct_kmax(diagram, k, z)) <= 1e-9

    def test_points_lie_under_first_level(self, rng):
        for _ in range(50):
            diagram = random_superlevel_diagram(rng, 6)
            landscape = diagram_to_landscape(diagram, 1)
            mid = (diagram.births + diagram.deaths) / 2.0
            assert np.all(landscape.level(1).evaluate(mid) >= diagram.half_lives() - 1e-12)


class TestMeanLandscape:
    """Tests for mean_landscape."""

    def test_identical_inputs(self, rng):
        diagram = random_superlevel_diagram(rng, 6)
        landscape = diagram_to_landscape(diagram, 2)
        for k in (1, 2):
            mean = mean_landscape([landscape] * 5, k)
            assert np.max(np.abs(mean.evaluate(landscape.level(k).z) - landscape.level(k).values)) <= 1e-12

    def test_two_triangles(self):
        a = diagram_to_landscape(superlevel([(4.0, 0.0, 0)], bound=4.0), 1)
        b = diagram_to_landscape(superlevel([(2.0, 0.0, 0)], bound=4.0), 1)
        mean = mean_landscape([a, b], 1)
        assert mean.evaluate(1.0) == 1.0
        assert mean.evaluate(2.0) == 1.0

    def test_commutes_with_evaluation(self, rng):
        landscapes = [diagram_to_landscape(random_superlevel_diagram(rng, 5), 2) for _ in range(8)]
        zs = rng.uniform(0.0, 10.0, 200)
        for k in (1, 2):
            mean = mean_landscape(landscapes, k)
            direct = np.mean([ls.level(k).evaluate(zs) for ls in landscapes], axis=0)
            assert np.max(np.abs(mean.evaluate(zs) - direct)) <= 1e-12

    def test_rejects_empty(self):
        with pytest.raises(ValidationError):
            mean_landscape([], 1)

    def test_rejects_mixed_bounds(self):
        a = diagram_to_landscape(superlevel([(1.0, 0.0, 0)], bound=1.0), 1)
        b = diagram_to_landscape(superlevel([(1.0, 0.0, 0)], bound=2.0), 1)
        with pytest.raises(ValidationError):
            mean_landscape([a, b], 1)


class TestSupDiffAndNorm:
    """Tests for landscape_sup_diff and landscape_norm."""

    def test_identity(self, rng):
        level = diagram_to_landscape(random_superlevel_diagram(rng, 6), 1).level(1)
        assert landscape_sup_diff(level, level) == 0.0

    def test_triangle_against_zero(self):
        level = diagram_to_landscape(superlevel([(4.0, 0.0, 0)], bound=4.0), 1).level(1)
        assert landscape_sup_diff(level, LandscapeLevel.zero(4.0)) == 2.0

    def test_matches_grid_scan(self, rng):
        grid = np.arange(0.0, 10.0 + 1e-12, 1e-4)
        for _ in range(5):
            a = diagram_to_landscape(random_superlevel_diagram(rng, 5), 1).level(1)
            b = diagram_to_landscape(random_superlevel_diagram(rng, 5), 1).level(1)
            exact = landscape_sup_diff(a, b)
            scanned = float(np.max(np.abs(a.evaluate(grid) - b.evaluate(grid))))
            assert scanned <= exact + 1e-12
            assert exact - scanned <= 2e-4

    def test_norms_of_single_triangle(self):
        level = diagram_to_landscape(superlevel([(4.0, 0.0, 0)], bound=4.0), 1).level(1)
        assert landscape_norm(level) == 2.0
        assert landscape_norm(level, 1) == pytest.approx(4.0)
        assert landscape_norm(level, 2) == pytest.approx(math.sqrt(16.0 / 3.0))

    def test_l1_norm_with_sign_change(self):
        level = LandscapeLevel([0.0, 1.0, 2.0], [1.0, -1.0, 0.0])
        assert landscape_norm(level, 1) == pytest.approx(0.5 + 0.5)

    def test_rejects_unknown_order(self):
        with pytest.raises(ValidationError):
            landscape_norm(LandscapeLevel.zero(1.0), 3)
