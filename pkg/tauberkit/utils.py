import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from tqdm.auto import tqdm

__all__ = [
    'eprint',
    'parallel_map',
    'as_float',
    'check_finite',
    'check_positive',
    'check_nonnegative',
]


def eprint(*args, **kwargs):
    print(*args, file=sys.stderr, **kwargs)


def parallel_map(func, items, n_jobs=1, progress=False, desc=None):
    """
    apply ``func`` to every element of ``items`` and return the results in input order.

    Parameters
    ----------
    func : callable
        a function of one argument
    items : iterable
        the arguments
    n_jobs : int, optional
        the number of worker threads. With ``n_jobs <= 1`` everything runs in the calling thread.
    progress : bool, optional
        whether to display a ``tqdm`` progress bar (on stderr)
    desc : str, optional
        label of the progress bar

    Returns
    -------
    results : list
    """
    items = list(items)
    bar = tqdm(total=len(items), desc=desc, leave=False, file=sys.stderr,
               dynamic_ncols=True, disable=not progress)

    def job(item):
        out = func(item)
        bar.update(1)
        return out

    try:
        if n_jobs is None or n_jobs <= 1 or len(items) <= 1:
            return [job(item) for item in items]
        with ThreadPoolExecutor(max_workers=min(n_jobs, len(items))) as executor:
            return list(executor.map(job, items))
    finally:
        bar.close()


def as_float(y):
    """numpy 0-d results to python floats, arrays untouched"""
    y = np.asarray(y)
    if y.ndim == 0:
        return y.item()
    return y


def check_finite(x, name="x"):
    arr = np.asarray(x)
    if not np.all(np.isfinite(arr)):
        raise ValueError("Expected finite %s. Got %s" % (name, str(x)))
    return x


def check_positive(x, name="x"):
    if not (np.isfinite(x) and x > 0):
        raise ValueError("Expected %s > 0. Got %s" % (name, str(x)))
    return x


def check_nonnegative(x, name="x"):
    if not (np.isfinite(x) and x >= 0):
        raise ValueError("Expected %s >= 0. Got %s" % (name, str(x)))
    return x
