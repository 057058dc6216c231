"""
Bottleneck distance between persistence diagrams.

The distance is the smallest threshold eps for which a perfect matching
exists in the threshold graph. The graph has one row per point of `a` plus
one diagonal copy per point of `b`, and one column per point of `b` plus one
diagonal copy per point of `a`. A point may pair with its own diagonal copy,
and diagonal copies always pair with each other at cost 0. The optimum is
always one of the candidate costs, so a binary search over their sorted set
is exact.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.spatial.distance import cdist

from tda_models import Diagram, Matching, ValidationError

logger = logging.getLogger(__name__)


def _coordinates(diagram: Diagram) -> np.ndarray:
    return np.column_stack((diagram.births, diagram.deaths))


def _costs(a: Diagram, b: Diagram) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """L-infinity cross costs and distances to the diagonal."""
    if len(a) and len(b):
        cross = cdist(_coordinates(a), _coordinates(b), metric='chebyshev')
    else:
        cross = np.zeros((len(a), len(b)))
    return cross, a.half_lives(), b.half_lives()


def _match(cross: np.ndarray, diag_a: np.ndarray, diag_b: np.ndarray, eps: float) -> Optional[np.ndarray]:
    """Perfect matching of the threshold graph at `eps`, or None if none exists."""
    m, k = cross.shape
    size = m + k
    adjacency = np.zeros((size, size), dtype=bool)
    adjacency[:m, :k] = cross <= eps
    adjacency[np.arange(m), k + np.arange(m)] = diag_a <= eps
    adjacency[m + np.arange(k), np.arange(k)] = diag_b <= eps
    adjacency[m:, k:] = True
    matching = maximum_bipartite_matching(csr_matrix(adjacency.astype(np.int8)), perm_type='column')
    if np.any(matching < 0):
        return None
    return matching


def _check_directions(a: Diagram, b: Diagram) -> None:
    if a.direction is not b.direction:
        raise ValidationError(
            f"cannot compare a {a.direction.value} diagram with a {b.direction.value} diagram"
        )


def _search(a: Diagram, b: Diagram) -> Tuple[float, Optional[np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    cross, diag_a, diag_b = _costs(a, b)
    candidates = np.unique(np.concatenate((cross.ravel(), diag_a, diag_b, [0.0])))
    # The largest candidate is always feasible: everything goes to the diagonal.
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _match(cross, diag_a, diag_b, candidates[mid]) is None:
            lo = mid + 1
        else:
            hi = mid
    return float(candidates[lo]), _match(cross, diag_a, diag_b, candidates[lo]), (cross, diag_a, diag_b)


def bottleneck_distance(a: Diagram, b: Diagram) -> float:
    """
    Exact bottleneck distance between two diagrams of the same direction.

    Callers select a homology dimension beforehand (`Diagram.select`).

    Returns:
        float: The smallest maximal L-infinity displacement over all
        matchings that may send points to the diagonal
    """
    _check_directions(a, b)
    if len(a) == 0 and len(b) == 0:
        return 0.0
    distance, _, _ = _search(a, b)
    return distance


def bottleneck_matching(a: Diagram, b: Diagram) -> Matching:
    """Return an optimal matching; diagonal partners are reported as None."""
    _check_directions(a, b)
    if len(a) == 0 and len(b) == 0:
        return Matching()
    distance, matching, (cross, diag_a, diag_b) = _search(a, b)
    m, k = cross.shape
    pairs: List[Tuple[Optional[int], Optional[int]]] = []
    costs: List[float] = []
    for row, col in enumerate(matching.tolist()):
        if row < m and col < k:
            pairs.append((row, col))
            costs.append(float(cross[row, col]))
        elif row < m:
            pairs.append((row, None))
            costs.append(float(diag_a[row]))
        elif col < k:
            pairs.append((None, col))
            costs.append(float(diag_b[col]))
    cost = max(costs) if costs else 0.0
    logger.debug(f"Bottleneck matching: {len(pairs)} pairs, cost {cost} (distance {distance})")
    return Matching(pairs=pairs, cost=cost)


def significant_points(diagram: Diagram, c: float) -> Diagram:
    """
    Points whose box of side 2c does not touch the diagonal, i.e. whose
    half-life |b - d| / 2 exceeds c.
    """
    if c < 0:
        raise ValidationError(f"threshold c must be >= 0, got {c}")
    mask = diagram.half_lives() > c
    return Diagram(diagram.births[mask], diagram.deaths[mask], diagram.dims[mask], diagram.direction, diagram.bound)


def betti_counts(diagram: Diagram, c: float, max_dim: Optional[int] = None) -> Dict[int, int]:
    """Number of significant points per homology dimension 0..max_dim."""
    significant = significant_points(diagram, c)
    if max_dim is None:
        max_dim = int(diagram.dims.max()) if len(diagram) else 0
    return {dim: int(np.sum(significant.dims == dim)) for dim in range(max_dim + 1)}
