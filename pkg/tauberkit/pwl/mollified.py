import dataclasses as dtc
from functools import lru_cache

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .examples import build_one_sided_extremal
from ..quadrature import integrate
from ..utils import as_float

__all__ = [
    'BUMP_SUPPORT',
    'bump',
    'bump_cdf',
    'SampledFunction',
    'MollifiedSequence',
    'mollified_sequence',
]

BUMP_SUPPORT = (1., 3.)


def _raw_bump(x):
    x = np.asarray(x, dtype=float)
    gap = 1. - (x - 2.) ** 2
    inside = gap > 0.
    return np.where(inside, np.exp(-1. / np.where(inside, gap, 1.)), 0.)


@lru_cache()
def _bump_mass():
    return integrate(lambda x: float(_raw_bump(x)), *BUMP_SUPPORT, tol=1e-14).value


@lru_cache()
def _cdf_table(points=20001):
    x = np.linspace(*BUMP_SUPPORT, points)
    y = cumulative_trapezoid(_raw_bump(x), x, initial=0.)
    y.flags.writeable = False
    return x, y / y[-1]


def bump(x):
    """smooth unit-mass bump ``c exp(-1 / (1 - (x - 2)^2))`` supported in (1, 3)"""
    return as_float(_raw_bump(x) / _bump_mass())


def bump_cdf(x):
    """``int_{-inf}^x bump``"""
    tx, ty = _cdf_table()
    return as_float(np.interp(x, tx, ty, left=0., right=1.))


@dtc.dataclass(frozen=True, eq=False)
class SampledFunction:
    x: np.ndarray
    y: np.ndarray

    def __call__(self, t):
        return as_float(np.interp(t, self.x, self.y))

    @property
    def minimum(self):
        return float(self.y.min())

    @property
    def maximum(self):
        return float(self.y.max())

    def cumulative(self, b=0.):
        """the sampled reduction ``x -> int_{x_0}^x y - b`` (trapezoidal)"""
        return SampledFunction(self.x, cumulative_trapezoid(self.y, self.x, initial=0.) - b)


@dtc.dataclass(frozen=True, eq=False)
class MollifiedSequence(SampledFunction):
    """``rho_n = psi_n * d tau`` for the one-sided sawtooth ``tau``, sampled on ``[0, length]``"""
    n: int = 1

    def primitive_exact(self, x):
        """``(psi_n * tau)(x) = int psi_n(u) tau(x - u) du`` by quadrature"""
        tau = build_one_sided_extremal()
        lo, hi = BUMP_SUPPORT[0] / self.n, BUMP_SUPPORT[1] / self.n

        def one(x_):
            kinks = x_ - tau.breakpoints_in(x_ - hi, x_ - lo)
            return integrate(lambda u: self.n * float(_raw_bump(self.n * u)) / _bump_mass() * tau(x_ - u),
                             lo, hi, points=kinks, tol=1e-11).value

        x = np.asarray(x, dtype=float)
        if x.ndim == 0:
            return one(float(x))
        return np.array([one(v) for v in x.ravel()]).reshape(x.shape)


def mollified_sequence(n, length=20., points=2 ** 16 + 1, min_points_per_bump=32):
    """
    smooth densities ``rho_n`` whose primitives approach the one-sided sawtooth.

    ``d tau = -dx + 2 sum_k delta_{2k+1}``, so
    ``rho_n(x) = -Psi_n(x) + 2 sum_k psi_n(x - 2k - 1)`` with ``Psi_n`` the primitive of
    ``psi_n(x) = n psi(n x)``.

    Parameters
    ----------
    n : int
        index of the sequence, ``n >= 1``
    length : float, optional
        the grid covers ``[0, length]``
    points : int, optional
        number of grid points
    min_points_per_bump : int, optional
        resolution required across the width ``2/n`` of ``psi_n``

    Returns
    -------
    rho : MollifiedSequence

    Raises
    ------
    ValueError
        if ``n < 1`` or the grid cannot resolve ``psi_n``
    """
    if int(n) != n or n < 1:
        raise ValueError("Expected a positive integer n. Got %s" % str(n))
    n = int(n)
    x = np.linspace(0., length, points)
    step = x[1] - x[0]
    if (2. / n) / step < min_points_per_bump:
        raise ValueError("Expected at least %i grid points across the bump of width 2/n. Got %.1f for n=%i"
                         % (min_points_per_bump, (2. / n) / step, n))
    rho = -bump_cdf(n * x)
    for center in np.arange(1., length, 2.):
        rho = rho + 2. * n * _raw_bump(n * (x - center)) / _bump_mass()
    return MollifiedSequence(x, rho, n)
