import dataclasses as dtc
import math
from functools import lru_cache, partial
from typing import Callable, Tuple

import numpy as np
import pandas as pd
from scipy.special import bernoulli, euler

from .pwl.mollified import BUMP_SUPPORT, bump
from .quadrature import integrate
from .utils import check_finite, check_positive

__all__ = [
    'BLOWUP',
    'SingularPointError',
    'LaplaceClosedForm',
    'BoundaryScan',
    'laplace_pwl_exact',
    'laplace_partial',
    'closed_form_two_sided',
    'closed_form_one_sided',
    'closed_form_mollified',
    'bump_transform',
    'two_sided_transform',
    'one_sided_transform',
    'mollified_transform',
    'pwl_transform',
    'boundary_scan',
    'laplace_window_average',
    'partial_fourier_sup',
]

BLOWUP = 1e12
SERIES_RADIUS = 1e-3
_SERIES_TERMS = 8


class SingularPointError(ValueError):
    """raised when a transform is evaluated at one of its singular points"""

    def __init__(self, message, singular_points=()):
        super(SingularPointError, self).__init__(message)
        self.singular_points = tuple(singular_points)


# Exact transforms of piecewise-linear functions

def _moments(s, d):
    """``int_0^d u^k e^{-su} du`` for ``k = 0, 1, 2``"""
    z = s * d
    if abs(z) < .5:
        k = np.arange(24)
        signs = (-z) ** k
        fact = np.cumprod(np.r_[1., np.arange(1, 24)])
        m0 = d * np.sum(signs / (fact * (k + 1)))
        m1 = d * d * np.sum(signs / (fact * (k + 2)))
        m2 = d ** 3 * np.sum(signs / (fact * (k + 3)))
        return complex(m0), complex(m1), complex(m2)
    e = np.exp(-z)
    m0 = -np.expm1(-z) / s
    m1 = (1. - e * (1. + z)) / (s * s)
    m2 = (2. - e * (z * z + 2. * z + 2.)) / (s * s * s)
    return complex(m0), complex(m1), complex(m2)


def _segments_transform(s, lo, hi, vl, vh):
    """``sum over segments of int_lo^hi (linear) e^{-sx} dx``"""
    total = 0j
    for a, b, fa, fb in zip(lo, hi, vl, vh):
        d = b - a
        m0, m1, _ = _moments(s, d)
        total += np.exp(-s * a) * (fa * m0 + (fb - fa) / d * m1)
    return total


def _pieces(f, a, b):
    """linear pieces of ``f`` on ``[a, b]``, right ends taken as left limits"""
    pts = np.unique(np.r_[a, f.breakpoints_in(a, b), b])
    p, q = pts[:-1], pts[1:]
    fp = np.asarray(f(p), dtype=float)
    fm = np.asarray(f((p + q) / 2.), dtype=float)
    return p, q, fp, fp + 2. * (fm - fp)


def _exact_on(f, s, a, b):
    """``int_a^b f(x) e^{-sx} dx`` from the linear pieces of ``f`` (extensions included)"""
    return _segments_transform(s, *_pieces(f, a, b))


def _first_moment_on(f, s, a, b):
    """``int_a^b x f(x) e^{-sx} dx``, exact"""
    total = 0j
    for p, q, fa, fb in zip(*_pieces(f, a, b)):
        m0, m1, m2 = _moments(s, q - p)
        slope = (fb - fa) / (q - p)
        total += np.exp(-s * p) * (p * fa * m0 + (p * slope + fa) * m1 + slope * m2)
    return total


def _check_half_plane(s):
    s = complex(s)
    if not (np.isfinite(s.real) and np.isfinite(s.imag)):
        raise ValueError("Expected finite s. Got %s" % str(s))
    if s.real < 0:
        raise ValueError("Expected Re s >= 0. Got %s" % str(s))
    return s


def _tail_poles(period, s, count=3):
    base = int(round(s.imag * period / (2 * np.pi)))
    return tuple(2 * np.pi * k / period for k in range(base - count, base + count + 1))


def laplace_partial(f, s, x):
    """``int_0^x f(u) e^{-su} du`` for a finite ``x``, exact"""
    if x <= 0:
        return 0j
    return _exact_on(f, complex(s), 0., float(x))


def laplace_pwl_exact(f, s):
    """
    ``int_0^inf f(x) e^{-sx} dx`` in closed form.

    Each linear piece is integrated exactly and a periodic tail contributes
    ``e^{-sP} / (1 - e^{-sP}) * int_{x_m - P}^{x_m} f(x) e^{-sx} dx``. The geometric factor
    continues the transform to the imaginary axis away from ``s = 2 pi i k / P``; at those points
    the transform is finite when the period integral vanishes there, and takes its limit.

    Parameters
    ----------
    f : PiecewiseLinear
    s : complex
        ``Re s >= 0``

    Returns
    -------
    value : complex

    Raises
    ------
    SingularPointError
        if ``s`` is a pole of the continued transform
    """
    s = _check_half_plane(s)
    xm = float(f.knots[-1])
    total = _exact_on(f, s, 0., xm) if xm > 0 else 0j
    if f.period is None:
        c = f.values[-1]
        if c != 0:
            if s == 0:
                raise SingularPointError("constant tail %r has no transform at s = 0" % c, (0.,))
            total += c * np.exp(-s * max(xm, 0.)) / s
        return complex(total)
    P = f.period
    denominator = -np.expm1(-s * P)
    period = _exact_on(f, s, f.tail_start, xm)
    if abs(denominator) < 1e-12:
        scale = P * max(1., float(np.abs(f.values).max()))
        if abs(period) > 1e-12 * scale:
            raise SingularPointError("s = %s is a pole of the periodic tail" % str(s), _tail_poles(P, s))
        # removable: the period integral vanishes, the limit is its s-derivative over P
        tail = -_first_moment_on(f, s, f.tail_start, xm) / P
    else:
        tail = np.exp(-s * P) / denominator * period
    if xm < 0:
        tail -= _exact_on(f, s, xm, 0.)
    return complex(total + tail)


# Closed forms

def _series(coefficients, s):
    return complex(sum(c * s ** (2 * k) for k, c in enumerate(coefficients)))


@lru_cache()
def _two_sided_coefficients():
    # (1 - sech a) / s^2 with a = pi s / 2
    E = euler(2 * _SERIES_TERMS)
    return tuple(-E[2 * k] * (np.pi / 2) ** (2 * k) / math.factorial(2 * k) for k in range(1, _SERIES_TERMS + 1))


@lru_cache()
def _one_sided_coefficients():
    # (1/sinh s - 1/s) / s
    B = bernoulli(2 * _SERIES_TERMS)
    return tuple(2. * (1. - 2. ** (2 * k - 1)) * B[2 * k] / math.factorial(2 * k)
                 for k in range(1, _SERIES_TERMS + 1))


def closed_form_two_sided(s):
    """
    ``(1 - e^{-pi s/2})^2 / (s^2 (1 + e^{-pi s}))``, the transform of the two-sided extremal function.

    Near ``s = 0`` an 8-term series is used; the limit at 0 is ``pi^2 / 8``.
    """
    s = complex(check_finite(s, "s"))
    if abs(s) < SERIES_RADIUS:
        return _series(_two_sided_coefficients(), s)
    denominator = 1. + np.exp(-np.pi * s)
    if abs(denominator) < 1e-13:
        raise SingularPointError("s = %s is a pole of the two-sided transform" % str(s),
                                 two_sided_transform().singular_points)
    return complex(np.expm1(-np.pi * s / 2) ** 2 / (s * s * denominator))


def closed_form_one_sided(s):
    """``-1/s^2 + 2 e^{-s} / (s (1 - e^{-2s}))``; the limit at 0 is ``-1/6``"""
    s = complex(check_finite(s, "s"))
    if abs(s) < SERIES_RADIUS:
        return _series(_one_sided_coefficients(), s)
    denominator = -np.expm1(-2. * s)
    if abs(denominator) < 1e-13:
        raise SingularPointError("s = %s is a pole of the one-sided transform" % str(s),
                                 one_sided_transform().singular_points)
    return complex(-1. / (s * s) + 2. * np.exp(-s) / (s * denominator))


@lru_cache(maxsize=4096)
def bump_transform(omega):
    """``int psi(x) e^{-i omega x} dx`` for the unit-mass bump"""
    re = integrate(lambda x: bump(x) * math.cos(omega * x), *BUMP_SUPPORT, tol=1e-13).value
    im = integrate(lambda x: -bump(x) * math.sin(omega * x), *BUMP_SUPPORT, tol=1e-13).value
    return complex(re, im)


def closed_form_mollified(n, t):
    """
    boundary values of the transform of ``rho_n``: ``psi_hat(t/n) (-1/(it) + 2 e^{-it} / (1 - e^{-2it}))``.
    """
    if int(n) != n or n < 1:
        raise ValueError("Expected a positive integer n. Got %s" % str(n))
    t = float(check_finite(t, "t"))
    if abs(t) >= np.pi:
        raise ValueError("Expected |t| < pi. Got %r" % t)
    if t == 0:
        return 0j
    s = 1j * t
    return complex(bump_transform(t / n) * s * closed_form_one_sided(s))


@dtc.dataclass(frozen=True)
class LaplaceClosedForm:
    """
    a Laplace transform with its boundary behaviour on the imaginary axis.

    ``constant`` is the value subtracted in the Tauberian reduction (the transform at 0 when it
    exists).
    """
    name: str
    evaluator: Callable[[complex], complex]
    singular_points: Tuple[float, ...] = ()
    regular_segment: Tuple[float, float] = (-np.inf, np.inf)
    constant: float = 0.

    def __call__(self, s):
        return self.evaluator(complex(s))

    def at_boundary(self, t):
        return self(1j * float(t))


def two_sided_transform():
    return LaplaceClosedForm('two_sided', closed_form_two_sided, (-3., -1., 1., 3.), (-1., 1.),
                             constant=np.pi ** 2 / 8)


def one_sided_transform():
    return LaplaceClosedForm('one_sided', closed_form_one_sided,
                             (-2 * np.pi, -np.pi, np.pi, 2 * np.pi), (-np.pi, np.pi), constant=-1. / 6)


def mollified_transform(n):
    def evaluator(s):
        if s.real != 0:
            raise ValueError("Expected s on the imaginary axis. Got %s" % str(s))
        return closed_form_mollified(n, s.imag)
    return LaplaceClosedForm('mollified_%i' % n, evaluator, (-np.pi, np.pi), (-np.pi, np.pi))


def pwl_transform(f):
    """``laplace_pwl_exact`` of ``f`` with the candidate poles ``2 pi k / P``"""
    if f.period is None:
        poles = (0.,) if f.values[-1] != 0 else ()
        segment = (0., 0.) if poles else (-np.inf, np.inf)
    else:
        w = 2 * np.pi / f.period
        poles = tuple(w * k for k in (-3, -2, -1, 1, 2, 3))
        segment = (-w, w)
        # a non-zero mean leaves a true pole at 0
        if abs(f.integral(f.tail_start, float(f.knots[-1]))) > 1e-12 * f.period:
            poles, segment = tuple(sorted(poles + (0.,))), (0., 0.)
    return LaplaceClosedForm('pwl', partial(laplace_pwl_exact, f), poles, segment)


@dtc.dataclass(frozen=True, eq=False)
class BoundaryScan:
    t: np.ndarray
    values: np.ndarray
    max_abs: float
    blew_up: bool
    singular_hits: Tuple[float, ...] = ()

    def to_frame(self):
        return pd.DataFrame({'t': self.t, 're': self.values.real,
                             'im': self.values.imag, 'abs': np.abs(self.values)})

    def to_csv(self, path=None):
        """columns ``t, re, im, abs``; returns the text when ``path`` is None"""
        return self.to_frame().to_csv(path, index=False, lineterminator="\n")


def boundary_scan(F, t_grid, blowup=BLOWUP):
    """
    evaluate ``F(it)`` along ``t_grid`` and flag values above ``blowup`` or singular hits.
    """
    t = np.asarray(t_grid, dtype=float).ravel()
    values = np.empty(t.size, dtype=complex)
    hits = []
    for i, ti in enumerate(t):
        try:
            values[i] = F(1j * ti)
        except SingularPointError:
            values[i] = complex(np.nan, np.nan)
            hits.append(float(ti))
    magnitude = np.abs(values)
    finite = np.isfinite(magnitude)
    max_abs = float(magnitude[finite].max()) if np.any(finite) else math.inf
    blew_up = bool(hits) or bool(np.any(~finite)) or max_abs > blowup
    return BoundaryScan(t, values, max_abs, blew_up, tuple(hits))


def laplace_window_average(f, delta, s):
    """
    transform of the sliding average ``(1/delta) int_x^{x+delta} f``:
    ``(e^{delta s} - 1)/(delta s) L{f}(s) - E(s)`` with the entire correction
    ``E(s) = (1/delta) int_0^delta e^{su} int_0^u f(y) e^{-sy} dy du``.
    """
    check_positive(delta, "delta")
    s = _check_half_plane(s)
    if f.knots[0] < 0 or f.head_period is not None or f.values[0] != 0:
        raise ValueError("Expected f supported on [0, inf)")
    z = delta * s
    factor = np.expm1(z) / z if z != 0 else 1.
    main = factor * laplace_pwl_exact(f, s)
    inner = lambda u: np.exp(s * u) * laplace_partial(f, s, u)
    points = f.breakpoints_in(0., delta)
    re = integrate(lambda u: inner(u).real, 0., delta, points=points, tol=1e-12).value
    im = integrate(lambda u: inner(u).imag, 0., delta, points=points, tol=1e-12).value
    return complex(main - complex(re, im) / delta)


def partial_fourier_sup(f, t, x_max, per_unit=64):
    """``sup_{0 < x <= x_max} |int_0^x f(u) e^{-itu} du|`` on a fine grid plus the knots"""
    check_positive(x_max, "x_max")
    grid = np.unique(np.r_[np.linspace(0., x_max, int(per_unit * x_max) + 2), f.breakpoints_in(0., x_max)])
    p, q = grid[:-1], grid[1:]
    fp = np.asarray(f(p), dtype=float)
    fm = np.asarray(f((p + q) / 2.), dtype=float)
    fq = fp + 2. * (fm - fp)
    s = 1j * float(t)
    pieces = np.array([_segments_transform(s, [a], [b], [va], [vb]) for a, b, va, vb in zip(p, q, fp, fq)])
    return float(np.abs(np.cumsum(pieces)).max())
