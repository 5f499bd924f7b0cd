"""Thread-capped, order-preserving work mapping.

EPICUSP_THREADS caps the worker count; output order never depends on it,
so results are run-to-run identical for any setting.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_budget() -> int:
    raw = os.environ.get("EPICUSP_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return min(4, os.cpu_count() or 1)
    return max(1, n)


def map_ordered(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Apply fn to every item, preserving input order in the result."""
    work = list(items)
    workers = min(thread_budget(), len(work)) if work else 1
    if workers <= 1 or len(work) < 8:
        return [fn(x) for x in work]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, work))
