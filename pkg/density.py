"""
Kernel density estimation on a regular grid.

p_hat(x) = sum_i w_i * h^-D * K_D(||x - X_i|| / h), with w_i = 1/n for the
plain estimator. Grid vertices are processed in fixed-size chunks; each chunk
builds one kernel block (vertices x points) that is reused for every weight
vector, which is what makes bootstrap replicates cheap.
"""
import logging
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import gamma

import config
from tda_models import Grid, GridField, PointCloud, ValidationError
from utils.parallel import chunk_ranges, ordered_map

logger = logging.getLogger(__name__)


class Kernel(Enum):
    """Radial kernels, normalised to integrate to one over R^D."""
    GAUSSIAN = "gaussian"
    EPANECHNIKOV = "epanechnikov"

    def profile(self, u: np.ndarray, dim: int) -> np.ndarray:
        """Evaluate K_D at scaled distances u = ||x - X_i|| / h."""
        if self is Kernel.GAUSSIAN:
            return (2.0 * np.pi) ** (-dim / 2.0) * np.exp(-0.5 * u * u)
        # Unit-ball volume gives the D-dimensional normalising constant.
        unit_ball = np.pi ** (dim / 2.0) / gamma(dim / 2.0 + 1.0)
        constant = (dim + 2.0) / (2.0 * unit_ball)
        return constant * np.clip(1.0 - u * u, 0.0, None)


def _check_inputs(cloud: PointCloud, grid: Grid, h: float) -> None:
    if not (h > 0 and np.isfinite(h)):
        raise ValidationError(f"bandwidth h must be > 0, got {h}")
    if cloud.n == 0:
        raise ValidationError("cannot estimate a density from an empty cloud")
    if cloud.dim != grid.dim:
        raise ValidationError(f"cloud dimension {cloud.dim} does not match grid dimension {grid.dim}")


def _check_weights(weights: np.ndarray, n: int) -> None:
    if weights.shape != (n,):
        raise ValidationError(f"expected {n} weights, got {weights.shape[0] if weights.ndim else 0}")
    if np.any(weights < 0):
        raise ValidationError("weights must be nonnegative")
    if abs(float(weights.sum()) - 1.0) > 1e-12:
        raise ValidationError(f"weights must sum to 1, got {float(weights.sum())!r}")


def kernel_block(vertices: np.ndarray, points: np.ndarray, kernel: Kernel, h: float) -> np.ndarray:
    """Matrix of h^-D K_D(||v - X_i|| / h) with one row per vertex."""
    dim = points.shape[1]
    u = cdist(vertices, points) / h
    return kernel.profile(u, dim) / h ** dim


def kde_evaluate_weighted(
    cloud: PointCloud,
    weights: Sequence[float],
    grid: Grid,
    kernel: Kernel,
    h: float,
    threads: Optional[int] = None,
) -> GridField:
    """
    Weighted kernel density estimate at every grid vertex.

    Args:
        cloud: Sample points X_1..X_n
        weights: Nonnegative weights summing to 1, one per point
        grid: Evaluation grid, same dimension as the cloud
        kernel: Kernel to use
        h: Bandwidth, h > 0
        threads: Thread cap for chunk evaluation

    Returns:
        GridField: Estimated density values
    """
    _check_inputs(cloud, grid, h)
    weights = np.asarray(weights, dtype=float)
    _check_weights(weights, cloud.n)

    vertices = grid.vertices()

    def evaluate(rows: range) -> np.ndarray:
        return kernel_block(vertices[rows.start:rows.stop], cloud.points, kernel, h) @ weights

    chunks = chunk_ranges(len(vertices), config.KDE_CHUNK_SIZE)
    values = np.concatenate(ordered_map(evaluate, chunks, threads))
    return GridField(grid=grid, values=values)


def kde_evaluate(
    cloud: PointCloud,
    grid: Grid,
    kernel: Kernel,
    h: float,
    threads: Optional[int] = None,
) -> GridField:
    """Kernel density estimate with uniform weights 1/n."""
    _check_inputs(cloud, grid, h)
    weights = np.full(cloud.n, 1.0 / cloud.n)
    logger.debug(f"KDE: n={cloud.n}, D={cloud.dim}, h={h}, kernel={kernel.value}, vertices={grid.vertex_count}")
    return kde_evaluate_weighted(cloud, weights, grid, kernel, h, threads)


def kde_bootstrap_sup_norms(
    cloud: PointCloud,
    grid: Grid,
    kernel: Kernel,
    h: float,
    weight_matrix: np.ndarray,
    threads: Optional[int] = None,
) -> np.ndarray:
    """
    Sup-norm distance between each reweighted estimate and the plain estimate.

    Row j of `weight_matrix` is a weight vector w_j; the result holds
    max_x |sum_i (w_ji - 1/n) h^-D K_D(||x - X_i|| / h)| for every j.
    """
    _check_inputs(cloud, grid, h)
    weight_matrix = np.atleast_2d(np.asarray(weight_matrix, dtype=float))
    if weight_matrix.shape[1] != cloud.n:
        raise ValidationError(f"weight matrix must have {cloud.n} columns, got {weight_matrix.shape[1]}")
    deltas = (weight_matrix - 1.0 / cloud.n).T
    vertices = grid.vertices()

    def chunk_max(rows: range) -> np.ndarray:
        block = kernel_block(vertices[rows.start:rows.stop], cloud.points, kernel, h)
        return np.max(np.abs(block @ deltas), axis=0)

    chunks = chunk_ranges(len(vertices), config.KDE_CHUNK_SIZE)
    per_chunk = ordered_map(chunk_max, chunks, threads)
    return np.max(np.vstack(per_chunk), axis=0)


def sup_norm_diff(a: GridField, b: GridField) -> float:
    """Largest absolute difference over the shared grid vertices."""
    if a.grid != b.grid:
        raise ValidationError("fields must share the same grid")
    return float(np.max(np.abs(a.values - b.values)))


def superlevel_mask(field: GridField, level: float) -> np.ndarray:
    """Boolean vertex mask of {x : field(x) > level}."""
    return field.values > level
