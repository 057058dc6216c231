"""
Persistence diagrams by boundary-matrix reduction over Z/2.

Columns are reduced from the top dimension down with clearing: once a column
of dimension d has pivot sigma, the column of sigma is known to be zero and
is skipped. Edge columns are not reduced explicitly; zero-dimensional pairs
come from a union-find sweep applying the elder rule, which yields the same
pairing as reducing the edge columns in filtration order.
"""
import logging
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from filtration import rips_filtration, validate_filtration
from tda_models import Diagram, Direction, Filtration, PointCloud

logger = logging.getLogger(__name__)


class UnionFind:
    """Disjoint sets over filtration positions; each root remembers its oldest vertex."""

    def __init__(self, size: int):
        self.parents = list(range(size))
        self.oldest = list(range(size))

    def find(self, index: int) -> int:
        root = index
        while self.parents[root] != root:
            root = self.parents[root]
        while self.parents[index] != root:
            self.parents[index], index = root, self.parents[index]
        return root

    def merge(self, a: int, b: int) -> int:
        """Attach the younger of the two roots to the elder and return the younger."""
        if self.oldest[a] > self.oldest[b]:
            a, b = b, a
        self.parents[b] = a
        return b


def _reduce_columns(filtration: Filtration) -> Tuple[List[Tuple[int, int]], Set[int], np.ndarray]:
    """Reduce columns of dimension >= 2 with clearing.

    Returns:
        (pairs, positive, cleared): creator/destroyer position pairs, the
        positive cells of dimension >= 2 and a mask of cells already paired
        as creators.
    """
    dims = filtration.dims
    boundaries = filtration.boundaries
    cleared = np.zeros(len(filtration), dtype=bool)
    pairs: List[Tuple[int, int]] = []
    positive: Set[int] = set()

    for dim in range(filtration.max_dim, 1, -1):
        pivots: Dict[int, Set[int]] = {}
        columns = np.flatnonzero(dims == dim)
        for j in columns.tolist():
            if cleared[j]:
                continue
            column = set(boundaries[j])
            while column:
                low = max(column)
                other = pivots.get(low)
                if other is None:
                    break
                column ^= other
            if column:
                low = max(column)
                pivots[low] = column
                cleared[low] = True
                pairs.append((low, j))
            else:
                positive.add(j)
        logger.debug(f"Reduced {len(columns)} columns of dimension {dim}: {len(pivots)} pairs")
    return pairs, positive, cleared


def _zero_dim_pairs(filtration: Filtration, cleared: np.ndarray) -> Tuple[List[Tuple[int, int]], List[int], List[int]]:
    """Elder-rule sweep over vertices and edges.

    Returns:
        (pairs, roots, cycle_edges): vertex/edge pairs, vertices that stay
        unpaired, and edges that close a cycle without being cleared.
    """
    dims = filtration.dims
    forest = UnionFind(len(filtration))
    pairs: List[Tuple[int, int]] = []
    cycle_edges: List[int] = []
    vertices: List[int] = []
    for position in np.flatnonzero(dims <= 1).tolist():
        if dims[position] == 0:
            vertices.append(position)
            continue
        u, v = filtration.boundaries[position]
        ru, rv = forest.find(u), forest.find(v)
        if ru == rv:
            if not cleared[position]:
                cycle_edges.append(position)
            continue
        younger = forest.merge(ru, rv)
        pairs.append((forest.oldest[younger], position))
    roots = [v for v in vertices if forest.find(v) == v]
    return pairs, roots, cycle_edges


def compute_persistence(
    filtration: Filtration,
    bound: Optional[float] = None,
    validate: bool = True,
) -> Diagram:
    """
    Compute the persistence diagram of a filtration.

    Each pair (sigma creates, tau destroys) becomes a point
    (value(sigma), value(tau)) in dimension dim(sigma); zero-persistence
    pairs are dropped. Essential classes die at 0 for superlevel filtrations
    and at the bound T for sublevel ones.

    Args:
        filtration: A valid filtration
        bound: The bound T; defaults to the largest filtration value (or 1
            when every value is 0)
        validate: Run `validate_filtration` first

    Returns:
        Diagram: Points sorted by dimension, then by creator position
    """
    if validate:
        validate_filtration(filtration)
    values = filtration.values
    if bound is None:
        top = float(np.max(values)) if len(filtration) else 0.0
        bound = top if top > 0 else 1.0

    high_pairs, positive, cleared = _reduce_columns(filtration)
    low_pairs, roots, cycle_edges = _zero_dim_pairs(filtration, cleared)

    essential_death = 0.0 if filtration.direction is Direction.SUPERLEVEL else bound
    essentials = roots + cycle_edges + sorted(p for p in positive if not cleared[p])

    points: List[Tuple[int, int, float, float]] = []
    for creator, destroyer in low_pairs + high_pairs:
        if values[creator] != values[destroyer]:
            points.append((int(filtration.dims[creator]), creator, float(values[creator]), float(values[destroyer])))
    for creator in essentials:
        if values[creator] != essential_death:
            points.append((int(filtration.dims[creator]), creator, float(values[creator]), essential_death))
    points.sort(key=lambda p: (p[0], p[1]))

    logger.debug(f"Persistence: {len(points)} points from {len(filtration)} cells")
    return Diagram(
        births=np.array([p[2] for p in points], dtype=float),
        deaths=np.array([p[3] for p in points], dtype=float),
        dims=np.array([p[0] for p in points], dtype=np.int64),
        direction=filtration.direction,
        bound=bound,
    )


def rips_persistence(cloud: PointCloud, max_dim: int, max_radius: float, validate: bool = False) -> Diagram:
    """Rips diagram of a point cloud with T = max_radius."""
    return compute_persistence(rips_filtration(cloud, max_dim, max_radius), bound=max_radius, validate=validate)


def diagram_to_midlife(diagram: Diagram) -> List[Tuple[float, float, int]]:
    """Map each (b, d) to ((b + d) / 2, |b - d| / 2), keeping its dimension."""
    mid = (diagram.births + diagram.deaths) / 2.0
    half = np.abs(diagram.births - diagram.deaths) / 2.0
    return [(float(x), float(y), int(k)) for x, y, k in zip(mid, half, diagram.dims)]
