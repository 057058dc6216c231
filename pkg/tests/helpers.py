"""Builders for test diagrams."""
import math
from typing import List

import numpy as np

from tda_models import Diagram, Direction


def superlevel(points: List[tuple], bound: float = 10.0) -> Diagram:
    """Build a superlevel diagram from (birth, death, dim) tuples."""
    if not points:
        return Diagram.empty(Direction.SUPERLEVEL, bound)
    births, deaths, dims = zip(*points)
    return Diagram(list(births), list(deaths), np.asarray(dims, dtype=np.int64), Direction.SUPERLEVEL, bound)


def sublevel(points: List[tuple], bound: float = 10.0) -> Diagram:
    """Build a sublevel diagram from (birth, death, dim) tuples."""
    if not points:
        return Diagram.empty(Direction.SUBLEVEL, bound)
    births, deaths, dims = zip(*points)
    return Diagram(list(births), list(deaths), np.asarray(dims, dtype=np.int64), Direction.SUBLEVEL, bound)


def random_superlevel_diagram(rng: np.random.Generator, max_points: int, bound: float = 10.0, dim: int = 0) -> Diagram:
    """Random superlevel diagram with 0..max_points points of one dimension."""
    m = int(rng.integers(0, max_points + 1))
    a = rng.uniform(0.0, bound, m)
    b = rng.uniform(0.0, bound, m)
    return Diagram(np.maximum(a, b), np.minimum(a, b), np.full(m, dim, dtype=np.int64), Direction.SUPERLEVEL, bound)


SQRT2 = math.sqrt(2.0)
