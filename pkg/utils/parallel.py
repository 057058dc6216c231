"""Index-ordered parallel map over independent work units."""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

import config

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def resolve_threads(threads: Optional[int]) -> int:
    """Return the thread cap, falling back to the configured default."""
    if threads is None:
        threads = config.DEFAULT_THREADS
    return max(1, int(threads))


def ordered_map(func: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply `func` to every item, possibly on several threads.

    Results are returned in input order, so the output never depends on the
    schedule or on the thread count.
    """
    threads = resolve_threads(threads)
    if threads == 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug(f"Running {len(items)} work units on {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def chunk_ranges(total: int, size: int) -> List[range]:
    """Split range(total) into consecutive ranges of at most `size` items."""
    size = max(1, int(size))
    return [range(start, min(start + size, total)) for start in range(0, total, size)]
