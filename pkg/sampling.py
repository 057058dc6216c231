"""
Seeded samplers for the synthetic data sources: a torus in R^3 and a
uniform mixture of circles in R^2.

Every sampler takes a master seed and a stream index and draws only from
``utils.seeding.rng_for(seed, stream)``, so identical arguments always give
bit-identical clouds.
"""
import json
import logging
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from tda_models import CircleSpec, FormatError, PointCloud, ValidationError
from utils.seeding import rng_for

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi


def sample_torus(R: float, r: float, n: int, seed: int, stream: int = 0) -> PointCloud:
    """
    Sample `n` points uniformly (w.r.t. surface area) from the torus
    ((R + r cos eta) cos theta, (R + r cos eta) sin theta, r sin eta).

    theta is uniform; eta is drawn by rejection, accepting a uniform proposal
    with probability (1 + (r/R) cos eta) / (1 + r/R).

    Args:
        R: Distance from the torus center to the tube center
        r: Tube radius, 0 < r < R
        n: Number of points, n >= 1
        seed: Master seed
        stream: Seed stream index

    Returns:
        PointCloud: Array of shape (n, 3)
    """
    if not (0 < r < R):
        raise ValidationError(f"torus radii must satisfy 0 < r < R, got r={r}, R={R}")
    if n < 1:
        raise ValidationError(f"number of points n must be >= 1, got {n}")

    rng = rng_for(seed, stream)
    ratio = r / R
    accepted: List[np.ndarray] = []
    count = 0
    while count < n:
        batch = max(2 * (n - count), 64)
        eta = rng.uniform(0.0, TWO_PI, batch)
        u = rng.uniform(0.0, 1.0, batch)
        keep = eta[u * (1.0 + ratio) < 1.0 + ratio * np.cos(eta)]
        accepted.append(keep)
        count += keep.shape[0]
    eta = np.concatenate(accepted)[:n]
    theta = rng.uniform(0.0, TWO_PI, n)

    ring = R + r * np.cos(eta)
    points = np.column_stack((ring * np.cos(theta), ring * np.sin(theta), r * np.sin(eta)))
    logger.debug(f"Sampled {n} torus points (R={R}, r={r}, seed={seed}, stream={stream})")
    return PointCloud(points)


def sample_circles(
    specs: Sequence[CircleSpec],
    n: int,
    seed: int,
    stream: int = 0,
    noise: float = 0.0,
) -> PointCloud:
    """
    Sample `n` points from a uniform mixture of circles.

    Each point picks a circle uniformly at random, then a uniform angle on it.
    With `noise` > 0, isotropic Gaussian noise of that standard deviation is
    added to every point.
    """
    if not specs:
        raise ValidationError("at least one circle spec is required")
    if n < 1:
        raise ValidationError(f"number of points n must be >= 1, got {n}")
    if noise < 0:
        raise ValidationError(f"noise must be >= 0, got {noise}")

    rng = rng_for(seed, stream)
    centers = np.array([spec.center for spec in specs], dtype=float)
    radii = np.array([spec.radius for spec in specs], dtype=float)
    which = rng.integers(0, len(specs), n)
    phi = rng.uniform(0.0, TWO_PI, n)
    points = centers[which] + radii[which, None] * np.column_stack((np.cos(phi), np.sin(phi)))
    if noise > 0:
        points = points + rng.normal(0.0, noise, points.shape)
    return PointCloud(points)


def default_circle_layout() -> List[CircleSpec]:
    """Nine circles on a 3x3 grid of pitch 1, radii alternating 0.4 and 0.3."""
    return [
        CircleSpec(center=(float(i), float(j)), radius=0.4 if (i + j) % 2 == 0 else 0.3)
        for i in range(3)
        for j in range(3)
    ]


def load_circle_specs(path: Union[str, Path]) -> List[CircleSpec]:
    """Load a JSON list of {"center": [x, y], "radius": r} objects."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON: {e}") from e
    if isinstance(data, dict):
        data = data.get('circles', [])
    if not isinstance(data, list):
        raise FormatError(f"{path}: expected a list of circle specs")
    return [CircleSpec.from_dict(item) for item in data]


def save_circle_specs(specs: Sequence[CircleSpec], path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump([spec.to_dict() for spec in specs], f, indent=2)
        f.write('\n')
