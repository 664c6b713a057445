import dataclasses as dtc
import math

import numpy as np

from .function import PiecewiseLinear
from ..utils import as_float, check_positive

__all__ = [
    'difference_range',
    'oscillation_modulus',
    'decrease_modulus',
    'oscillation_rate',
    'decrease_rate_at_zero',
    'WindowAverage',
    'window_average',
    'theta_modulus',
]


def _tail_pieces(f, copies):
    """tail segments repeated ``copies`` times from the tail start"""
    lo, hi, vl, vh = f.tail_segments()
    shift = np.repeat(np.arange(copies) * f.period, lo.size)
    return (np.tile(lo, copies) + shift, np.tile(hi, copies) + shift,
            np.tile(vl, copies), np.tile(vh, copies))


def difference_range(f, delta):
    """
    ``(min, max)`` of ``f(y) - f(x)`` over ``x`` in one tail period and ``0 <= y - x <= delta``.

    Exact for piecewise-linear ``f``: each pair of linear pieces is handled on the polygon
    ``[x_lo, x_hi] x [y_lo, y_hi]`` cut by the strip, whose extremes sit at vertices.
    Pieces are half-open on the right, so a piece is only paired with itself and later pieces:
    at a jump the left limit is never compared with the right value at distance 0.
    """
    check_positive(delta, "delta")
    if f.period is None:
        return 0., 0.
    xl, xr, xvl, xvr = _tail_pieces(f, 1)
    ylo, yhi, yvl, yvr = _tail_pieces(f, int(math.ceil(delta / f.period)) + 1)
    sx = ((xvr - xvl) / (xr - xl))[:, None]
    sy = ((yvr - yvl) / (yhi - ylo))[None, :]
    xl, xr, xvl = xl[:, None], xr[:, None], xvl[:, None]
    yl, yr, yvl = ylo[None, :], yhi[None, :], yvl[None, :]
    eps = 1e-12 * max(1., f.period, delta)
    later = np.arange(ylo.size)[None, :] >= np.arange(xl.shape[0])[:, None]

    candidates = [(xl, yl), (xl, yr), (xr, yl), (xr, yr)]
    for c in (0., delta):
        candidates += [(xl, xl + c), (xr, xr + c), (yl - c, yl), (yr - c, yr)]

    lowest, highest = np.inf, -np.inf
    for px, py in candidates:
        px, py = np.broadcast_arrays(px, py)
        ok = ((px >= xl - eps) & (px <= xr + eps) & (py >= yl - eps) & (py <= yr + eps)
              & (py - px >= -eps) & (py - px <= delta + eps) & later)
        if not np.any(ok):
            continue
        d = (yvl + sy * (py - yl)) - (xvl + sx * (px - xl))
        lowest = min(lowest, float(d[ok].min()))
        highest = max(highest, float(d[ok].max()))
    return lowest, highest


def _vectorized(func, f, delta):
    delta = np.asarray(delta, dtype=float)
    if delta.ndim == 0:
        return func(f, float(delta))
    return np.array([func(f, float(d)) for d in delta.ravel()]).reshape(delta.shape)


def oscillation_modulus(f, delta):
    """
    ``Psi(delta) = limsup_x sup_{0 <= h <= delta} |f(x + h) - f(x)|``, exact over one tail period.
    """
    def one(f_, d):
        lowest, highest = difference_range(f_, d)
        return max(highest, -lowest, 0.)
    return _vectorized(one, f, delta)


def decrease_modulus(f, delta):
    """``Psi_-(delta) = -liminf_x inf_{0 <= h <= delta} (f(x + h) - f(x))``, always >= 0"""
    def one(f_, d):
        lowest, _ = difference_range(f_, d)
        return max(-lowest, 0.)
    return _vectorized(one, f, delta)


def oscillation_rate(f):
    """``Psi'(0+)``: the largest absolute tail slope, infinite if the tail jumps"""
    if f.period is None:
        return 0.
    if any(left != right for _, left, right in f.tail_jumps()):
        return math.inf
    lo, hi, vl, vh = f.tail_segments()
    return float(np.abs((vh - vl) / (hi - lo)).max())


def decrease_rate_at_zero(f):
    """``Psi_-'(0+)``: the steepest tail descent, infinite if the tail jumps down"""
    if f.period is None:
        return 0.
    if any(right < left for _, left, right in f.tail_jumps()):
        return math.inf
    lo, hi, vl, vh = f.tail_segments()
    return float(max(0., -((vh - vl) / (hi - lo)).min()))


@dtc.dataclass(frozen=True)
class WindowAverage:
    """
    the sliding average ``x -> (1/delta) int_x^{x + delta} f``, piecewise quadratic.
    """
    f: PiecewiseLinear
    delta: float

    def __post_init__(self):
        check_positive(self.delta, "delta")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return as_float((self.f.primitive(x + self.delta) - self.f.primitive(x)) / self.delta)

    @property
    def lipschitz_bound(self):
        """``Psi(delta) / delta``, a bound on the eventual Lipschitz constant"""
        return oscillation_modulus(self.f, self.delta) / self.delta


def window_average(f, delta):
    return WindowAverage(f, float(delta))


def theta_modulus(f, theta):
    """
    ``limsup_x e^{-theta x} |int_0^x e^{theta u} df(u)|`` for an eventually periodic ``f``.

    ``rho(x) = e^{-theta x} int_0^x e^{theta u} df(u)`` solves ``rho' = -theta rho + f'`` and jumps
    with ``f``. Over one tail period the map ``rho(start) -> rho(start + P)`` is affine; its fixed
    point is the periodic steady state, whose extremes sit at the knots.
    """
    check_positive(theta, "theta")
    if f.period is None:
        return 0.
    start = f.tail_start
    keep = f.knots > start + 1e-12
    k = np.r_[start, f.knots[keep]]
    v = np.r_[f(start), f.values[keep]]

    def run(r0):
        out = [r0]
        r = r0
        for i in range(k.size - 1):
            width = k[i + 1] - k[i]
            if width == 0:
                r = r + (v[i + 1] - v[i])
            else:
                sigma = (v[i + 1] - v[i]) / width
                target = sigma / theta
                r = target + (r - target) * math.exp(-theta * width)
            out.append(r)
        return np.array(out)

    # affine map r0 -> A r0 + B
    B = run(0.)[-1]
    A = run(1.)[-1] - B
    fixed = B / (1. - A)
    return float(np.abs(run(fixed)).max())
