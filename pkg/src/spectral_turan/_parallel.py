import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "SPECTRAL_TURAN_THREADS"


def max_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """``list(map(fn, items))``, threaded when the env var allows it.

    Output order always follows input order.
    """
    items = list(items)
    threads = min(max_threads(), len(items))
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
