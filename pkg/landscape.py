"""
Exact persistence landscapes.

Each diagram point (b, d) contributes the tent t_p(z) = max(0, min(z - lo, hi - z))
with lo = min(b, d) and hi = max(b, d), so superlevel and sublevel diagrams
share one formula. Level k of the landscape is the k-th largest tent value.

Levels are built one at a time by a sweep over the intervals [lo, hi] in
order of increasing lo and decreasing hi. Each sweep follows the upper
envelope of the remaining tents, emitting endpoints, apexes and crossings,
and pushes the part of a crossed tent that lies below the envelope back for
the next level. A level over m points has O(m) breakpoints.
"""
import bisect
import logging
from typing import List, Sequence, Tuple

import numpy as np

from tda_models import Diagram, Landscape, LandscapeLevel, ValidationError

logger = logging.getLogger(__name__)


def triangle(b: float, d: float, z: float) -> float:
    """Tent function of the point (b, d) evaluated at z."""
    lo, hi = min(b, d), max(b, d)
    return max(0.0, min(z - lo, hi - z))


def _sweep_level(intervals: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    """
    Breakpoints of the upper envelope of the tents in `intervals`.

    `intervals` holds (lo, -hi) pairs sorted ascending and is consumed: tents
    on the envelope are removed and the hidden tails of crossed tents are
    inserted in order.
    """
    lo, neg_hi = intervals.pop(0)
    hi = -neg_hi
    points = [(lo, 0.0), ((lo + hi) / 2.0, (hi - lo) / 2.0)]
    p = 0
    while True:
        # first remaining interval, at or after p, that outlives the current one
        while p < len(intervals) and -intervals[p][1] <= hi:
            p += 1
        if p == len(intervals):
            points.append((hi, 0.0))
            return points
        next_lo, next_neg_hi = intervals.pop(p)
        next_hi = -next_neg_hi
        if next_lo > hi:
            points.append((hi, 0.0))
        if next_lo >= hi:
            points.append((next_lo, 0.0))
        else:
            points.append(((next_lo + hi) / 2.0, (hi - next_lo) / 2.0))
            bisect.insort(intervals, (next_lo, -hi), lo=p)
        points.append(((next_lo + next_hi) / 2.0, (next_hi - next_lo) / 2.0))
        lo, hi = next_lo, next_hi


def _framed(points: List[Tuple[float, float]], bound: float) -> LandscapeLevel:
    """Level from sweep breakpoints, padded with zeros out to [0, bound]."""
    if points[0][0] > 0.0:
        points.insert(0, (0.0, 0.0))
    if points[-1][0] < bound:
        points.append((bound, 0.0))
    z, values = zip(*points)
    return LandscapeLevel(np.array(z), np.array(values))


def diagram_to_landscape(diagram: Diagram, K: int) -> Landscape:
    """
    Build landscape levels 1..K of a diagram.

    Args:
        diagram: Diagram with bound T; callers select one homology dimension
        K: Number of levels, K >= 1

    Returns:
        Landscape: Exact breakpoints per level; levels beyond the number of
        points are identically zero
    """
    if K < 1:
        raise ValidationError(f"number of landscape levels K must be >= 1, got {K}")
    bound = diagram.bound
    lo = np.minimum(diagram.births, diagram.deaths)
    hi = np.maximum(diagram.births, diagram.deaths)
    intervals = sorted(zip(lo.tolist(), (-hi).tolist()))

    levels = []
    while intervals and len(levels) < K:
        levels.append(_framed(_sweep_level(intervals), bound))
    breakpoints = sum(len(level.z) for level in levels)
    levels.extend(LandscapeLevel.zero(bound) for _ in range(K - len(levels)))
    logger.debug(f"Landscape of {len(diagram)} points: {breakpoints} breakpoints over {K} levels")
    return Landscape(levels, bound)


def landscape_eval(landscape: Landscape, k: int, z: float) -> float:
    """Value of level k at z; zero outside the support and beyond stored levels."""
    return float(landscape.level(k).evaluate(z))


def evaluation_matrix(levels: Sequence[LandscapeLevel]) -> Tuple[np.ndarray, np.ndarray]:
    """Union of breakpoints and the values of every level on it (one row per level)."""
    zs = np.unique(np.concatenate([level.z for level in levels]))
    return zs, np.vstack([level.evaluate(zs) for level in levels])


def mean_landscape(landscapes: Sequence[Landscape], k: int) -> LandscapeLevel:
    """
    Exact pointwise mean of level k over several landscapes.

    The mean's breakpoints are the union of the inputs' breakpoints.
    """
    if not landscapes:
        raise ValidationError("cannot average an empty sequence of landscapes")
    bounds = {ls.bound for ls in landscapes}
    if len(bounds) > 1:
        raise ValidationError(f"landscapes must share the bound T, got {sorted(bounds)}")
    zs, values = evaluation_matrix([ls.level(k) for ls in landscapes])
    return LandscapeLevel(zs, anchored_mean(values))


def anchored_mean(values: np.ndarray) -> np.ndarray:
    """Mean over rows computed as offsets from the first row; exact when all rows agree."""
    return values[0] + (values - values[0]).mean(axis=0)


def landscape_sup_diff(a: LandscapeLevel, b: LandscapeLevel) -> float:
    """Exact sup over z of |a(z) - b(z)|, attained at a breakpoint of a or b."""
    zs = np.union1d(a.z, b.z)
    return float(np.max(np.abs(a.evaluate(zs) - b.evaluate(zs))))


def landscape_norm(level: LandscapeLevel, p: float = np.inf) -> float:
    """Exact L^p norm (p = 1, 2 or inf) of a piecewise-linear level."""
    y0, y1 = level.values[:-1], level.values[1:]
    dz = np.diff(level.z)
    if p == np.inf:
        return float(np.max(np.abs(level.values)))
    if p == 2:
        return float(np.sqrt(np.sum(dz * (y0 * y0 + y0 * y1 + y1 * y1) / 3.0)))
    if p == 1:
        same_sign = y0 * y1 >= 0
        total = np.abs(y0) + np.abs(y1)
        safe = np.where(total > 0, total, 1.0)
        area = np.where(same_sign, dz * total / 2.0, dz * (y0 * y0 + y1 * y1) / (2.0 * safe))
        return float(np.sum(area))
    raise ValidationError(f"unsupported norm order p={p}; use 1, 2 or inf")
