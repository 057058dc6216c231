"""
Deterministic seed streams.

Replicate j of a run with master seed m draws its randomness from
``numpy.random.default_rng(child_seed(m, j))`` where ``child_seed`` is the
SplitMix64 finaliser applied to ``m + (j + 1) * 0x9E3779B97F4A7C15`` (mod 2**64).
The result depends only on (m, j), so replicates can run in any order or
on any number of threads and still produce identical output.
"""
import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    """SplitMix64 output function on a 64-bit integer."""
    z = value & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def child_seed(master: int, stream: int) -> int:
    """
    Derive the seed for stream `stream` from `master`.

    Args:
        master: Master seed, any nonnegative integer (reduced mod 2**64)
        stream: Nonnegative stream index

    Returns:
        int: 64-bit child seed
    """
    if master < 0 or stream < 0:
        raise ValueError(f"seed and stream must be nonnegative, got {master} and {stream}")
    return splitmix64((master & MASK64) + (stream + 1) * GOLDEN_GAMMA)


def rng_for(master: int, stream: int) -> np.random.Generator:
    """Return the numpy generator for stream `stream` of `master`."""
    return np.random.default_rng(child_seed(master, stream))
