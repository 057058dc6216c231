# Initialize utils package
from .seeding import child_seed, rng_for
from .parallel import ordered_map

__all__ = ['child_seed', 'rng_for', 'ordered_map']
