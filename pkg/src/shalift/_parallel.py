"""Order-preserving map, optionally threaded (SHALIFT_THREADS caps workers)."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def workers() -> int:
    try:
        return max(1, int(os.environ.get("SHALIFT_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items) -> list:
    items = list(items)
    n = workers()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
