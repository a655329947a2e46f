""" Worker pools

All parallel work in the package goes through these two helpers.
They use joblib's thread backend: the heavy lifting happens inside numpy, which releases the GIL,
and threads let fold workers share the read-only dataset and the centered response matrix without copying.

Results always come back in submission order, so the outcome never depends on the worker count.
"""
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

import numpy as np
from joblib import Parallel, delayed, cpu_count

T = TypeVar('T')
R = TypeVar('R')


def resolve_workers(workers: Optional[int]) -> int:
    """ Turn the `workers` setting into a concrete count: `None` or 0 means every available core """
    if not workers:
        return cpu_count()
    if workers < 0:
        # joblib convention: -1 = all cores, -2 = all but one
        return max(1, cpu_count() + 1 + workers)
    return workers


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = 1) -> List[R]:
    """ map() over a worker pool; results are in the order of `items` """
    items = list(items)
    n_jobs = min(resolve_workers(workers), max(len(items), 1))

    # Serial: no pool overhead at all
    if n_jobs == 1:
        return [func(item) for item in items]

    return Parallel(n_jobs=n_jobs, prefer='threads')(delayed(func)(item) for item in items)


def split_blocks(indices: Sequence[int], workers: int, blocks_per_worker: int = 4) -> List[np.ndarray]:
    """ Split indices into contiguous blocks, a few per worker, to keep the per-task overhead low """
    indices = np.asarray(indices)
    n_blocks = max(1, min(len(indices), workers * blocks_per_worker))
    return [block for block in np.array_split(indices, n_blocks) if len(block)]
