"""
Bootstrap inference for persistence diagrams and landscapes.

Two procedures are built on one quantile rule:

* ``diagram_confidence``: radius c_n = q_alpha / sqrt(n) for the
  superlevel diagram of a kernel density estimate, from replicates
  sqrt(n) * ||p_hat^j - p_hat||_inf. By stability of persistence the
  bottleneck distance to the diagram of the smoothed density is at most
  c_n with asymptotic probability 1 - alpha.
* ``landscape_band``: band mean landscape +/- q_alpha / sqrt(n) from
  replicates sqrt(n) * sup_t |resampled mean - mean|.

Resampling with replacement is realised as multinomial weights. Replicate j
draws from ``rng_for(seed, j)`` only, so results do not depend on the
schedule or the thread count.
"""
import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from density import Kernel, kde_bootstrap_sup_norms, kde_evaluate
from filtration import cubical_superlevel
from landscape import anchored_mean, diagram_to_landscape, evaluation_matrix
from persistence import compute_persistence
from tda_models import (
    Band, BootstrapSummary, Diagram, Grid, Landscape, LandscapeLevel, PointCloud,
    ValidationError, radius_from_quantile,
)
from utils.parallel import ordered_map
from utils.seeding import rng_for

logger = logging.getLogger(__name__)


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise ValidationError(f"alpha must lie in (0, 1), got {alpha}")


def _check_replicate_count(B: int) -> None:
    if B < 1:
        raise ValidationError(f"number of bootstrap replicates B must be >= 1, got {B}")


def quantile_upper(replicates: Sequence[float], alpha: float) -> float:
    """
    Smallest replicate q with at most an alpha fraction of replicates >= q.

    Sorts ascending and returns the element at index ceil(B * (1 - alpha)),
    clamped to the last element.
    """
    values = np.sort(np.asarray(replicates, dtype=float).ravel())
    if values.size == 0:
        raise ValidationError("cannot take a quantile of zero replicates")
    _check_alpha(alpha)
    # Rounding keeps B * (1 - alpha) from landing an ulp above an integer.
    index = math.ceil(round(values.size * (1.0 - alpha), 9))
    return float(values[min(index, values.size - 1)])


def summarize(replicates: np.ndarray, alpha: float, n: int) -> BootstrapSummary:
    """Wrap replicates with their quantile and the radius q_alpha / sqrt(n)."""
    q_alpha = quantile_upper(replicates, alpha)
    return BootstrapSummary(
        replicates=replicates,
        q_alpha=q_alpha,
        alpha=alpha,
        B=len(replicates),
        n=n,
        radius=radius_from_quantile(q_alpha, n),
    )


def multinomial_weights(n: int, B: int, seed: int) -> np.ndarray:
    """Resampling weights, row j = counts / n with counts ~ Multinomial(n, 1/n) from stream j."""
    probabilities = np.full(n, 1.0 / n)
    return np.vstack([rng_for(seed, j).multinomial(n, probabilities) / n for j in range(B)])


def bootstrap_replicates(
    statistic: Callable[[np.ndarray], float],
    n: int,
    B: int,
    seed: int,
    threads: Optional[int] = None,
) -> np.ndarray:
    """Evaluate `statistic` on B index resamples of range(n); replicate j uses stream j."""
    _check_replicate_count(B)

    def replicate(j: int) -> float:
        return float(statistic(rng_for(seed, j).integers(0, n, n)))

    return np.array(ordered_map(replicate, list(range(B)), threads), dtype=float)


def percentile_interval(
    data: np.ndarray,
    statistic: Callable[[np.ndarray], float],
    B: int,
    alpha: float,
    seed: int,
    threads: Optional[int] = None,
) -> Tuple[float, float]:
    """
    Basic bootstrap confidence interval for a real-valued statistic.

    With F the empirical law of theta* - theta_hat over B resamples, returns
    [theta_hat - F^-1(1 - alpha/2), theta_hat - F^-1(alpha/2)].
    """
    _check_alpha(alpha)
    data = np.asarray(data)
    if len(data) == 0:
        raise ValidationError("cannot bootstrap an empty sample")
    estimate = float(statistic(data))
    replicates = bootstrap_replicates(lambda idx: statistic(data[idx]), len(data), B, seed, threads)
    shifts = replicates - estimate
    upper, lower = np.quantile(shifts, [1.0 - alpha / 2.0, alpha / 2.0], method='inverted_cdf')
    return estimate - float(upper), estimate - float(lower)


def diagram_confidence(
    cloud: PointCloud,
    grid: Grid,
    kernel: Kernel,
    h: float,
    B: int,
    alpha: float,
    seed: int,
    threads: Optional[int] = None,
) -> Tuple[Diagram, BootstrapSummary]:
    """
    Superlevel diagram of the KDE together with its bootstrap radius.

    Args:
        cloud: Sample X_1..X_n
        grid: Evaluation grid
        kernel: Kernel
        h: Bandwidth
        B: Number of replicates
        alpha: Level in (0, 1)
        seed: Master seed; replicate j uses stream j
        threads: Thread cap

    Returns:
        (diagram, summary): summary.radius is c_n = q_alpha / sqrt(n)
    """
    _check_replicate_count(B)
    _check_alpha(alpha)
    field = kde_evaluate(cloud, grid, kernel, h, threads)
    diagram = compute_persistence(cubical_superlevel(field), validate=False)
    logger.info(f"KDE diagram has {len(diagram)} points; drawing {B} bootstrap replicates")

    weights = multinomial_weights(cloud.n, B, seed)
    sup_norms = kde_bootstrap_sup_norms(cloud, grid, kernel, h, weights, threads)
    summary = summarize(math.sqrt(cloud.n) * sup_norms, alpha, cloud.n)
    logger.info(f"q_alpha={summary.q_alpha:.6g}, radius={summary.radius:.6g}")
    return diagram, summary


def landscape_band(
    diagrams: Sequence[Diagram],
    K: int,
    B: int,
    alpha: float,
    seed: int,
    threads: Optional[int] = None,
) -> Tuple[List[Band], List[BootstrapSummary]]:
    """
    Bootstrap confidence bands for the mean landscape, one per level k = 1..K.

    Every level uses the same resampling weights; their quantiles are
    computed independently, with no correction across levels.
    """
    if not diagrams:
        raise ValidationError("landscape band needs at least one diagram")
    bounds = sorted({d.bound for d in diagrams})
    if len(bounds) > 1:
        raise ValidationError(f"all diagrams must share the bound T, got {bounds}")
    _check_replicate_count(B)
    _check_alpha(alpha)

    landscapes = ordered_map(lambda d: diagram_to_landscape(d, K), list(diagrams), threads)
    return landscape_band_from_landscapes(landscapes, K, B, alpha, seed)


def landscape_band_from_landscapes(
    landscapes: Sequence[Landscape],
    K: int,
    B: int,
    alpha: float,
    seed: int,
) -> Tuple[List[Band], List[BootstrapSummary]]:
    """Bands for levels 1..K from precomputed landscapes; missing levels count as zero."""
    if not landscapes:
        raise ValidationError("landscape band needs at least one landscape")
    bounds = sorted({ls.bound for ls in landscapes})
    if len(bounds) > 1:
        raise ValidationError(f"all landscapes must share the bound T, got {bounds}")
    _check_replicate_count(B)
    _check_alpha(alpha)

    n = len(landscapes)
    deltas = multinomial_weights(n, B, seed) - 1.0 / n

    bands: List[Band] = []
    summaries: List[BootstrapSummary] = []
    for k in range(1, K + 1):
        zs, values = evaluation_matrix([ls.level(k) for ls in landscapes])
        # Offsets from the first landscape vanish exactly when all inputs agree.
        offsets = values - values[0]
        center = LandscapeLevel(zs, anchored_mean(values))
        replicates = math.sqrt(n) * np.max(np.abs(deltas @ offsets), axis=1)
        summary = summarize(replicates, alpha, n)
        bands.append(Band(center=center, radius=summary.radius))
        summaries.append(summary)
        logger.info(f"Level {k}: q_alpha={summary.q_alpha:.6g}, radius={summary.radius:.6g}")
    return bands, summaries
