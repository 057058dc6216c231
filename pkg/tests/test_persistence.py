"""Tests for persistence computation by boundary-matrix reduction."""
from itertools import combinations
from typing import List, Tuple

import numpy as np
import pytest
from scipy.sparse.csgraph import minimum_spanning_tree
from scipy.spatial.distance import pdist, squareform

from filtration import cubical_superlevel, rips_filtration
from metric import bottleneck_distance
from persistence import UnionFind, compute_persistence, diagram_to_midlife, rips_persistence
from tda_models import Direction, Filtration, Grid, GridField, PointCloud, ValidationError
from tests.helpers import SQRT2, sublevel, superlevel


def naive_diagram(filt: Filtration, bound: float) -> List[Tuple[int, float, float]]:
    """Plain column reduction over every column, no clearing and no union-find."""
    reduced: List[set] = []
    low_owner = {}
    for j, boundary in enumerate(filt.boundaries):
        column = set(boundary)
        while column and max(column) in low_owner:
            column ^= reduced[low_owner[max(column)]]
        reduced.append(column)
        if column:
            low_owner[max(column)] = j

    essential_death = 0.0 if filt.direction is Direction.SUPERLEVEL else bound
    points = []
    for low, j in low_owner.items():
        if filt.values[low] != filt.values[j]:
            points.append((int(filt.dims[low]), float(filt.values[low]), float(filt.values[j])))
    for j, column in enumerate(reduced):
        if not column and j not in low_owner and filt.values[j] != essential_death:
            points.append((int(filt.dims[j]), float(filt.values[j]), essential_death))
    return sorted(points)


def random_filtration(rng: np.random.Generator, direction: Direction) -> Filtration:
    """Random simplicial complex of at most 30 cells with monotone integer values."""
    nv = int(rng.integers(3, 6))
    simplices = [(v,) for v in range(nv)]
    value = {(v,): int(rng.integers(0, 4)) for v in range(nv)}
    present = set(simplices)
    for size, keep in ((2, 0.7), (3, 0.7), (4, 0.5)):
        for s in combinations(range(nv), size):
            faces = list(combinations(s, size - 1))
            if all(f in present for f in faces) and rng.uniform() < keep:
                simplices.append(s)
                present.add(s)
                value[s] = max(value[f] for f in faces) + int(rng.integers(0, 2))

    ordered = sorted(simplices, key=lambda s: (value[s], len(s), simplices.index(s)))
    position = {s: p for p, s in enumerate(ordered)}
    boundaries = [
        tuple(sorted(position[f] for f in combinations(s, len(s) - 1))) if len(s) > 1 else ()
        for s in ordered
    ]
    values = np.array([value[s] for s in ordered], dtype=float)
    if direction is Direction.SUPERLEVEL:
        values = 10.0 - values
    return Filtration(values, [len(s) - 1 for s in ordered], boundaries, direction, labels=ordered)


def default_bound(filt: Filtration) -> float:
    top = float(filt.values.max())
    return top if top > 0 else 1.0


class TestComputePersistence:
    """Hand-computed diagrams."""

    def test_one_dimensional_field(self, field_1d):
        diagram = compute_persistence(cubical_superlevel(field_1d))
        assert diagram.direction is Direction.SUPERLEVEL
        assert diagram.bound == 4.0
        assert diagram.points() == [(4.0, 0.0, 0), (3.0, 2.0, 0)]

    def test_constant_field(self):
        grid = Grid((0.0, 0.0), (1.0, 1.0), (3, 3))
        diagram = compute_persistence(cubical_superlevel(GridField(grid, np.full(16, 0.7))))
        assert diagram.points() == [(0.7, 0.0, 0)]

    def test_unit_square_rips(self, unit_square):
        diagram = rips_persistence(unit_square, max_dim=2, max_radius=2.0)
        h1 = diagram.select(1)
        assert len(h1) == 1
        assert h1.births[0] == 1.0
        assert h1.deaths[0] == pytest.approx(SQRT2, abs=1e-15)
        h0 = diagram.select(0)
        assert sorted(h0.deaths.tolist()) == [1.0, 1.0, 1.0, 2.0]
        assert diagram.bound == 2.0

    def test_ring_of_squares_has_one_loop(self):
        """A 2D field with a ring-shaped ridge gives exactly one H1 point."""
        values = np.ones((5, 5))
        values[1:4, 1:4] = 3.0
        values[2, 2] = 0.5
        grid = Grid((0.0, 0.0), (1.0, 1.0), (4, 4))
        diagram = compute_persistence(cubical_superlevel(GridField(grid, values.ravel())))
        assert diagram.select(1).points() == [(3.0, 0.5, 1)]
        assert diagram.select(0).points() == [(3.0, 0.0, 0)]

    def test_explicit_bound(self, field_1d):
        diagram = compute_persistence(cubical_superlevel(field_1d), bound=10.0)
        assert diagram.bound == 10.0

    def test_validation_runs_by_default(self):
        bad = Filtration([0.0, 1.0], [0, 1], [(), (0, 1)], Direction.SUBLEVEL)
        with pytest.raises(ValidationError):
            compute_persistence(bad)


class TestReductionOracle:
    """Agreement with an independent naive reduction."""

    @pytest.mark.parametrize("direction", [Direction.SUBLEVEL, Direction.SUPERLEVEL])
    def test_random_filtrations(self, direction, rng):
        for _ in range(50):
            filt = random_filtration(rng, direction)
            assert len(filt) <= 30
            bound = default_bound(filt)
            diagram = compute_persistence(filt)
            got = sorted((k, b, d) for b, d, k in diagram.points())
            assert got == naive_diagram(filt, bound)

    def test_rips_against_oracle(self, rng):
        for _ in range(10):
            cloud = PointCloud(rng.uniform(size=(7, 2)))
            filt = rips_filtration(cloud, max_dim=2, max_radius=0.8)
            diagram = compute_persistence(filt, bound=0.8)
            got = sorted((k, b, d) for b, d, k in diagram.points())
            assert got == naive_diagram(filt, 0.8)

    def test_zero_dimension_matches_spanning_tree(self, rng):
        points = rng.uniform(size=(15, 2))
        diagram = rips_persistence(PointCloud(points), max_dim=1, max_radius=5.0)
        tree = minimum_spanning_tree(squareform(pdist(points))).toarray()
        expected = sorted(tree[tree > 0].tolist()) + [5.0]
        h0 = diagram.select(0)
        assert np.all(h0.births == 0.0)
        assert sorted(h0.deaths.tolist()) == pytest.approx(expected, abs=1e-15)

    def test_euler_characteristic(self, rng):
        for _ in range(10):
            cloud = PointCloud(rng.uniform(size=(8, 2)))
            filt = rips_filtration(cloud, max_dim=2, max_radius=0.6)
            diagram = compute_persistence(filt, bound=0.6)
            chi = sum((-1) ** int(k) for k in filt.dims)
            essential = diagram.deaths == 0.6
            assert chi == sum((-1) ** int(k) for k in diagram.dims[essential])


class TestStability:
    """Bottleneck distance between diagrams is bounded by the sup-norm perturbation."""

    def test_perturbed_fields(self, rng):
        grid = Grid((0.0, 0.0), (1.0, 1.0), (6, 6))
        for _ in range(50):
            f = rng.uniform(1.0, 2.0, grid.vertex_count)
            g = f + rng.uniform(-0.1, 0.1, grid.vertex_count)
            eps = float(np.max(np.abs(f - g)))
            a = compute_persistence(cubical_superlevel(GridField(grid, f)), validate=False)
            b = compute_persistence(cubical_superlevel(GridField(grid, g)), validate=False)
            for dim in (0, 1, 2):
                assert bottleneck_distance(a.select(dim), b.select(dim)) <= eps + 1e-12


class TestUnionFind:
    """Tests for the elder-rule union-find."""

    def test_merge_keeps_elder(self):
        forest = UnionFind(4)
        younger = forest.merge(forest.find(3), forest.find(1))
        assert younger == 3
        assert forest.find(3) == 1
        younger = forest.merge(forest.find(0), forest.find(3))
        assert younger == 1
        assert {forest.find(i) for i in range(4)} == {0, 2}


class TestMidlife:
    """Tests for diagram_to_midlife."""

    def test_superlevel_points(self):
        diagram = superlevel([(4.0, 0.0, 0), (3.0, 2.0, 1)])
        assert diagram_to_midlife(diagram) == [(2.0, 2.0, 0), (2.5, 0.5, 1)]

    def test_sublevel_point(self):
        (x, y, k), = diagram_to_midlife(sublevel([(1.0, SQRT2, 1)]))
        assert x == pytest.approx((1.0 + SQRT2) / 2.0)
        assert y == pytest.approx((SQRT2 - 1.0) / 2.0)
        assert k == 1
