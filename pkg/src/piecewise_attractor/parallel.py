import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from .errors import ConfigError

THREADS_ENV = "PIECEWISE_ATTRACTOR_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    """
    Number of workers to use. PIECEWISE_ATTRACTOR_THREADS caps it;
    0 or unset means one per CPU.
    """
    raw = os.getenv(THREADS_ENV, "").strip()
    auto = os.cpu_count() or 1
    if not raw:
        return auto
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}.")
    if cap < 0:
        raise ConfigError(f"{THREADS_ENV} must be a non-negative integer, got {cap}.")
    return auto if cap == 0 else cap


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Applies fn to every item, possibly concurrently; results keep input order."""
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
