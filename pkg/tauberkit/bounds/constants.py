import dataclasses as dtc
import math
import warnings

import numpy as np
from scipy.optimize import minimize_scalar

from ..quadrature import integrate
from ..utils import check_nonnegative, check_positive

__all__ = [
    'DELTA_RANGE',
    'POINTS_PER_DECADE',
    'two_sided_bound',
    'one_sided_bound',
    'osc_bound_integrand',
    'OscBound',
    'osc_bound',
    'r_slow_bound',
    'ingham_refined_bound',
    'ingham_original_bound',
    'theta_sharpness',
    'one_sided_chain',
    'graham_vaaler_window',
    'graham_vaaler_theta_bound',
    'classical_constants',
]

DELTA_RANGE = (1e-4, 1e2)
POINTS_PER_DECADE = 400


def two_sided_bound(lam, M):
    """``pi M / (2 lambda)``: limsup of ``|tau|`` for a ``M``-Lipschitz ``tau``"""
    check_positive(lam, "lambda")
    check_nonnegative(M, "M")
    return math.pi * M / (2. * lam)


def one_sided_bound(lam, M):
    """``pi M / lambda``: limsup of ``|tau|`` when ``tau`` decreases at most like ``-M x``"""
    check_positive(lam, "lambda")
    check_nonnegative(M, "M")
    return math.pi * M / lam


def osc_bound_integrand(psi, lam, delta, two_sided=True):
    """``(1 + pi / (2 delta lambda)) psi(delta)``, or ``(1 + pi / (delta lambda)) psi(delta)``"""
    check_positive(lam, "lambda")
    delta = np.asarray(delta, dtype=float)
    if np.any(delta <= 0):
        raise ValueError("Expected delta > 0. Got %s" % str(delta))
    c = math.pi / (2. * lam) if two_sided else math.pi / lam
    values = _evaluate(psi, delta)
    out = (1. + c / delta) * values
    return out.item() if out.ndim == 0 else out


def _evaluate(psi, delta):
    out = np.asarray(psi(delta), dtype=float)
    if out.shape != delta.shape:
        out = np.array([float(psi(d)) for d in delta.ravel()]).reshape(delta.shape)
    return out


@dtc.dataclass(frozen=True)
class OscBound:
    value: float
    delta: float


def osc_bound(psi, lam, two_sided=True, delta_range=DELTA_RANGE, points_per_decade=POINTS_PER_DECADE):
    """
    ``inf_{delta > 0}`` of ``osc_bound_integrand`` for a modulus of continuity ``psi``.

    Scans a log grid of ``delta_range`` and refines the best grid point by a bounded Brent
    search in ``log(delta)``. A minimum at an end of the grid is returned as is, with a
    warning (the infimum is then approached outside the scanned range).

    Returns
    -------
    bound : OscBound
        the value and the minimising ``delta``
    """
    lo, hi = np.log10(delta_range[0]), np.log10(delta_range[1])
    grid = np.logspace(lo, hi, int(round((hi - lo) * points_per_decade)) + 1)
    values = np.asarray(osc_bound_integrand(psi, lam, grid, two_sided), dtype=float)
    if np.all(values == 0.):
        return OscBound(0., float(grid[0]))
    if not np.any(np.isfinite(values)):
        return OscBound(math.inf, float(grid[0]))
    i = int(np.nanargmin(np.where(np.isfinite(values), values, np.inf)))
    if i == 0 or i == grid.size - 1:
        warnings.warn("osc_bound: minimum at the end of the delta grid (delta=%.3e)" % grid[i])
        return OscBound(float(values[i]), float(grid[i]))
    one = lambda t: float(osc_bound_integrand(psi, lam, math.exp(t), two_sided))
    res = minimize_scalar(one, bounds=(math.log(grid[i - 1]), math.log(grid[i + 1])),
                          method='bounded', options=dict(xatol=1e-10))
    if res.success and res.fun <= values[i]:
        return OscBound(float(res.fun), float(math.exp(res.x)))
    return OscBound(float(values[i]), float(grid[i]))


def r_slow_bound(rate, lam, two_sided=True):
    """``pi rate / (2 lambda)`` (two-sided) or ``pi rate / lambda`` (one-sided), ``rate = psi'(0+)``"""
    check_positive(lam, "lambda")
    check_nonnegative(rate, "rate")
    return math.pi * rate / (2. * lam) if two_sided else math.pi * rate / lam


def ingham_refined_bound(theta, lam, Theta):
    """``(1 + theta pi / (2 lambda)) Theta``"""
    check_positive(theta, "theta")
    check_positive(lam, "lambda")
    check_nonnegative(Theta, "Theta")
    return (1. + theta * math.pi / (2. * lam)) * Theta


def ingham_original_bound(theta, lam, Theta):
    """``2 (1 + 3 theta / lambda) Theta``"""
    check_positive(theta, "theta")
    check_positive(lam, "lambda")
    check_nonnegative(Theta, "Theta")
    return 2. * (1. + 3. * theta / lam) * Theta


def theta_sharpness(theta):
    """
    ``(e^(pi theta) - 1) / (theta (e^(pi theta) + 1)) = tanh(pi theta / 2) / theta``, the value of
    ``Theta`` for the two-sided extremal example; tends to ``pi/2`` at 0 and to ``1 / theta`` at infinity.
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(theta <= 0):
        raise ValueError("Expected theta > 0. Got %s" % str(theta))
    out = np.tanh(math.pi * theta / 2.) / theta
    return out.item() if out.ndim == 0 else out


def _mean_excess(u):
    """``(u e^u - e^u + 1) / (u (e^u - 1)) = 1 + 1 / (e^u - 1) - 1 / u``, 1/2 at 0"""
    u = np.asarray(u, dtype=float)
    small = u < 1e-2
    safe = np.where(small, 1., u)
    with np.errstate(over='ignore'):
        big = 1. + np.exp(-safe) / -np.expm1(-safe) - 1. / safe
    return np.where(small, .5 + u / 12. - u ** 3 / 720., big)


def one_sided_chain(u):
    """
    ``(1 + u/4) * 2 (u e^u - e^u + 1) / (u (e^u - 1))``: the one-sided bound obtained from the
    Graham-Vaaler window, in units of ``pi M / lambda``, at ``u = 2 pi theta / lambda``.
    Tends to 1 as ``u -> 0+``.
    """
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise ValueError("Expected u > 0. Got %s" % str(u))
    out = (1. + u / 4.) * 2. * _mean_excess(u)
    return out.item() if out.ndim == 0 else out


def graham_vaaler_window(theta, lam, M):
    """
    lower and upper limits of ``e^(-theta x) int_0^x e^(theta u) d tau`` given by the sharp
    Wiener-Ikehara theorem, with ``u = 2 pi theta / lambda``::

        lower = u / (e^u - 1) * M / theta
        upper = u / (1 - e^(-u)) * M / theta

    Returns
    -------
    lower, upper : float
    """
    check_positive(theta, "theta")
    check_positive(lam, "lambda")
    check_nonnegative(M, "M")
    u = 2. * math.pi * theta / lam
    return u / math.expm1(u) * M / theta, u / -math.expm1(-u) * M / theta


def graham_vaaler_theta_bound(theta, lam, M):
    """``M (u e^u - e^u + 1) / (theta (e^u - 1))`` with ``u = 2 pi theta / lambda``"""
    check_positive(theta, "theta")
    check_positive(lam, "lambda")
    check_nonnegative(M, "M")
    u = 2. * math.pi * theta / lam
    return float(M * u * _mean_excess(u) / theta)


def classical_constants():
    """
    the constants of the earlier Tauberian remainder theorems:

    - ``ingham_two_sided``: 6
    - ``contour``: 2, from contour integration
    - ``ingham_one_sided``: ``8 (pi e^2 / (2 int_0^{1/2} sin^2 x / x^2 dx) - 1)``
    """
    sinc2 = integrate(lambda x: np.sinc(x / np.pi) ** 2, 0., .5, tol=1e-13).value
    return dict(ingham_two_sided=6., contour=2.,
                ingham_one_sided=8. * (math.pi * math.e ** 2 / (2. * sinc2) - 1.))
