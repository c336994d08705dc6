"""Deterministic parallel mapping.

Work items and results are plain picklable values; results come back in
submission order regardless of worker count, so output bytes never
depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def map_ordered(fn, items, workers: int = 1) -> list:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
