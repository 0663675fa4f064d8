"""
Worker pool helpers.
"""

import logging
import multiprocessing
from typing import Callable, Iterable, List, TypeVar

import psutil

T = TypeVar("T")
U = TypeVar("U")

logger = logging.getLogger(__name__)


def default_workers() -> int:
    """One worker per physical core, falling back to logical cores."""
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


def resolve_workers(requested: int) -> int:
    return requested if requested > 0 else default_workers()


def parallel_map(func: Callable[[T], U], items: Iterable[T], workers: int = 1) -> List[U]:
    """Order-preserving map, in a process pool when workers > 1.

    `func` and the items must be picklable when a pool is used.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    processes = min(workers, len(items))
    logger.debug(f"Mapping {len(items)} tasks over {processes} processes")
    with multiprocessing.Pool(processes) as pool:
        return pool.map(func, items)
