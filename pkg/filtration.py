"""
Filtered cell complexes.

Two constructions are provided:

* ``cubical_superlevel``: the full cubical complex of a grid field. Vertex
  values are the field values, every higher cell takes the minimum over its
  vertices, and cells are swept by decreasing value.
* ``rips_filtration``: the Vietoris-Rips flag complex of a point cloud up to
  dimension 2, swept by increasing diameter.

Ties are broken by (dimension, id), so faces always precede their cofaces.
"""
import logging
from collections import Counter
from itertools import combinations
from typing import Dict, List, Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

from tda_models import Direction, Filtration, GridField, PointCloud, ValidationError

logger = logging.getLogger(__name__)

MAX_RIPS_DIM = 2


def _cubical_values(vertex_values: np.ndarray) -> np.ndarray:
    """Spread vertex values onto the doubled grid, each cell taking the min of its vertices.

    Coordinates in the doubled grid are even along axes where the cell is a
    point and odd along axes where it spans an interval.
    """
    dim = vertex_values.ndim
    full = np.empty(tuple(2 * s - 1 for s in vertex_values.shape), dtype=float)
    full[tuple(slice(0, None, 2) for _ in range(dim))] = vertex_values
    for axis in range(dim):
        # Restricting later axes to even coordinates guarantees both faces are already filled.
        target: List[slice] = []
        left: List[slice] = []
        right: List[slice] = []
        for other in range(dim):
            if other < axis:
                target.append(slice(None)); left.append(slice(None)); right.append(slice(None))
            elif other == axis:
                target.append(slice(1, None, 2)); left.append(slice(0, -1, 2)); right.append(slice(2, None, 2))
            else:
                even = slice(0, None, 2)
                target.append(even); left.append(even); right.append(even)
        full[tuple(target)] = np.minimum(full[tuple(left)], full[tuple(right)])
    return full


def cubical_superlevel(field: GridField) -> Filtration:
    """
    Build the superlevel cubical filtration of a grid field.

    Args:
        field: Values on a D-dimensional grid

    Returns:
        Filtration: Every cell of the grid complex (vertices, edges, squares,
        ...), sorted by decreasing value, then dimension, then id
    """
    values_full = _cubical_values(field.as_array())
    shape = values_full.shape
    total = values_full.size

    parity = np.indices(shape).reshape(len(shape), -1).T % 2
    dims = parity.sum(axis=1)
    values = values_full.ravel()
    ids = np.arange(total)

    order = np.lexsort((ids, dims, -values))
    position = np.empty(total, dtype=np.int64)
    position[order] = np.arange(total)

    strides = [int(np.prod(shape[axis + 1:])) for axis in range(len(shape))]
    faces = np.full((total, 2 * len(shape)), -1, dtype=np.int64)
    for axis, stride in enumerate(strides):
        cells = np.flatnonzero(parity[:, axis])
        faces[cells, 2 * axis] = position[cells - stride]
        faces[cells, 2 * axis + 1] = position[cells + stride]
    faces = np.sort(faces[order], axis=1)
    boundaries = [tuple(f for f in row if f >= 0) for row in faces.tolist()]

    logger.debug(f"Cubical filtration with {total} cells on grid {field.grid.shape}")
    return Filtration(
        values=values[order],
        dims=dims[order],
        boundaries=boundaries,
        direction=Direction.SUPERLEVEL,
        labels=order.tolist(),
    )


def rips_filtration(cloud: PointCloud, max_dim: int, max_radius: float) -> Filtration:
    """
    Build the Vietoris-Rips filtration of a point cloud.

    Vertices enter at 0, an edge at the distance between its endpoints and a
    triangle at its longest edge. Simplices above `max_radius` are omitted.

    Args:
        cloud: Input points
        max_dim: Largest simplex dimension (0, 1 or 2)
        max_radius: Largest filtration value kept, > 0

    Returns:
        Filtration: Sublevel filtration sorted by value, dimension, id
    """
    if max_dim > MAX_RIPS_DIM:
        raise ValidationError(f"Rips filtrations support max_dim <= {MAX_RIPS_DIM}, got {max_dim}")
    if max_dim < 0:
        raise ValidationError(f"max_dim must be >= 0, got {max_dim}")
    if not max_radius > 0:
        raise ValidationError(f"max_radius must be > 0, got {max_radius}")
    if cloud.n == 0:
        raise ValidationError("cannot build a Rips filtration on an empty cloud")

    n = cloud.n
    dist = squareform(pdist(cloud.points)) if n > 1 else np.zeros((1, 1))
    simplices: List[Tuple[int, ...]] = [(i,) for i in range(n)]
    values: List[float] = [0.0] * n

    if max_dim >= 1:
        rows, cols = np.triu_indices(n, k=1)
        keep = dist[rows, cols] <= max_radius
        edges = list(zip(rows[keep].tolist(), cols[keep].tolist()))
        simplices.extend(edges)
        values.extend(float(dist[i, j]) for i, j in edges)

        if max_dim >= 2:
            adjacent = dist <= max_radius
            for i, j in edges:
                for k in np.flatnonzero(adjacent[i, j + 1:] & adjacent[j, j + 1:]) + j + 1:
                    simplices.append((i, j, int(k)))
                    values.append(float(max(dist[i, j], dist[i, k], dist[j, k])))

    dims = np.array([len(s) - 1 for s in simplices], dtype=np.int64)
    value_array = np.array(values, dtype=float)
    order = np.lexsort((np.arange(len(simplices)), dims, value_array))
    ordered = [simplices[i] for i in order]
    position: Dict[Tuple[int, ...], int] = {s: p for p, s in enumerate(ordered)}
    boundaries = [
        tuple(sorted(position[face] for face in combinations(s, len(s) - 1))) if len(s) > 1 else ()
        for s in ordered
    ]

    logger.debug(f"Rips filtration: {n} points, {len(ordered)} simplices up to dim {max_dim}")
    return Filtration(
        values=value_array[order],
        dims=dims[order],
        boundaries=boundaries,
        direction=Direction.SUBLEVEL,
        labels=ordered,
    )


def validate_filtration(filtration: Filtration) -> None:
    """
    Check that values are monotone in the sweep direction, faces precede
    cofaces with dimension one lower, and the boundary of a boundary vanishes
    mod 2. Raises ValidationError on the first violation.
    """
    values = filtration.values
    steps = np.diff(values)
    if filtration.direction is Direction.SUPERLEVEL and np.any(steps > 0):
        raise ValidationError("superlevel filtration values must be non-increasing")
    if filtration.direction is Direction.SUBLEVEL and np.any(steps < 0):
        raise ValidationError("sublevel filtration values must be non-decreasing")

    dims = filtration.dims
    for position, boundary in enumerate(filtration.boundaries):
        if dims[position] == 0:
            if boundary:
                raise ValidationError(f"vertex {position} has a nonempty boundary")
            continue
        for face in boundary:
            if face >= position:
                raise ValidationError(f"cell {position} appears before its face {face}")
            if dims[face] != dims[position] - 1:
                raise ValidationError(f"cell {position} has face {face} of the wrong dimension")
        if dims[position] >= 2:
            counts = Counter(f for face in boundary for f in filtration.boundaries[face])
            if any(c % 2 for c in counts.values()):
                raise ValidationError(f"boundary of boundary of cell {position} is nonzero mod 2")
