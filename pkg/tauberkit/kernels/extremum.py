import math
import numbers

import numpy as np
from scipy.optimize import minimize_scalar

from .band_limited import HALF_PI, SHARP
from ..quadrature import TailIntegrand, integrate, integrate_periodic_tail
from ..utils import as_float

__all__ = [
    'DIVERGENT',
    'extremum_location',
    'eval_ratio',
    'argextremum_ratio',
    'numerator_zeros_in',
    'first_moment_periods',
    'kernel_constant',
]

# returned by kernel_constant when int |x phi(x)| dx is infinite
DIVERGENT = math.inf


def _check_order(N):
    if not isinstance(N, numbers.Integral) or N < 1:
        raise ValueError("Expected a positive integer N. Got %s" % str(N))


def extremum_location(N):
    """
    location of the extremum of ``K(x + N pi) / K(x)`` on ``[-pi/2, pi/2]``,
    ``e_N = pi (-N + sqrt(N^2 - 1)) / 2``.

    Parameters
    ----------
    N : int
        ``N >= 1``

    Returns
    -------
    e_N : float
        ``-pi/2`` for ``N = 1``, in ``(-pi/2, 0)`` otherwise

    Examples
    --------
    >>> extremum_location(1) == -np.pi / 2
    True
    """
    _check_order(N)
    # rationalized form of -N + sqrt(N^2 - 1)
    return -HALF_PI / (N + math.sqrt(N * N - 1.))


def eval_ratio(N, x):
    _check_order(N)
    x = np.asarray(x, dtype=float)
    if np.any(~(np.abs(x) < HALF_PI)):
        raise ValueError("Expected x in the open window (-pi/2, pi/2). Got %s" % str(x))
    return as_float(SHARP(x + N * np.pi) / SHARP(x))


def argextremum_ratio(N, n=4001):
    """numerical location of the extremum of ``eval_ratio(N, .)``, grid scan then bounded Brent"""
    _check_order(N)
    if N == 1:
        return -HALF_PI
    edge = HALF_PI * (1 - 1e-9)
    grid = np.linspace(-edge, edge, n)
    magnitude = np.abs(eval_ratio(N, grid))
    i = int(np.argmax(magnitude))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, n - 1)]
    res = minimize_scalar(lambda x: -abs(eval_ratio(N, x)), bounds=(lo, hi), method='bounded',
                          options=dict(xatol=1e-12))
    return float(res.x)


def numerator_zeros_in(kernel, lo, hi):
    """zeros of the periodic numerator of ``kernel`` inside ``[lo, hi]``"""
    Q = kernel.numerator_period
    out = []
    for z in kernel.numerator_zeros:
        k = math.ceil((lo - z) / Q)
        while z + k * Q <= hi:
            out.append(z + k * Q)
            k += 1
    return sorted(out)


def first_moment_periods(kernel, count=50):
    """contributions of ``|x phi(x)|`` over ``[2 pi k, 2 pi (k + 1)]`` for ``k = 1..count``"""
    f = lambda x: abs(x * kernel(x))
    out = []
    for k in range(1, count + 1):
        lo, hi = 2 * np.pi * k, 2 * np.pi * (k + 1)
        out.append(integrate(f, lo, hi, points=numerator_zeros_in(kernel, lo, hi), tol=1e-11).value)
    return np.array(out)


def kernel_constant(kernel, count=50):
    """
    ``int |x phi(x)| dx / int phi(x) dx``, or ``DIVERGENT``.

    The moment is declared divergent when some period ``k <= count`` contributes at least ``1/k``
    times the contribution of the first period ``[2 pi, 4 pi]`` (a ``1/|x|`` tail of ``|x phi|``
    keeps ``k * c_k`` from decaying).
    """
    c = first_moment_periods(kernel, count)
    k = np.arange(1, count + 1)
    if np.any(k[1:] * c[1:] >= c[0]):
        return DIVERGENT
    tail = kernel.tail
    start = kernel.numerator_period * max(1, math.ceil(2 * tail.pole / kernel.numerator_period))
    head = integrate(lambda x: abs(x * kernel(x)), 0., start, singular=kernel.singular_points,
                     points=numerator_zeros_in(kernel, 0., start), tol=1e-11)
    rest = integrate_periodic_tail(
        TailIntegrand(periodic=lambda x: abs(kernel.numerator(x)),
                      weight=tail.lowered(1).absolute(),
                      period=kernel.numerator_period,
                      breaks=tuple(kernel.numerator_zeros)),
        start=start, tol=1e-11)
    return 2. * (head.value + rest.value) / kernel.mass
