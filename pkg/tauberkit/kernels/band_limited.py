import dataclasses as dtc
import math
from typing import Tuple

import numpy as np

from ..quadrature import RationalTail, integrate
from ..utils import as_float, check_finite

__all__ = [
    'HALF_PI',
    'BandLimitedKernel',
    'SharpKernel',
    'JacksonKernel',
    'FejerKernel',
    'SHARP',
    'JACKSON',
    'FEJER',
    'eval_sharp_kernel',
    'eval_sharp_kernel_ft',
    'eval_kernel_derivative',
    'eval_kernel_derivative2',
]

HALF_PI = math.pi / 2


class BandLimitedKernel:
    """
    base class for the real, even kernels whose Fourier transform vanishes outside
    ``[-bandlimit, bandlimit]``.

    Subclasses implement

    - ``formula(x)`` : the kernel on ``x >= 0``, finite at its removable points
    - ``ft(t)`` : the Fourier transform
    - ``numerator(x)`` : a periodic factor such that ``kernel(x) == numerator(x) * tail(|x|)``
      for ``|x| > tail.pole``, with ``tail`` a ``RationalTail``

    so that integrals against eventually periodic functions can be summed over the real line.
    """
    name: str = ''
    bandlimit: float = 1.
    singular_points: Tuple[float, ...] = ()
    numerator_period: float = 2 * math.pi
    # offsets in [0, numerator_period) where the numerator vanishes
    numerator_zeros: Tuple[float, ...] = ()

    def formula(self, x):
        raise NotImplementedError

    def ft(self, t):
        raise NotImplementedError

    def numerator(self, x):
        raise NotImplementedError

    @property
    def tail(self) -> RationalTail:
        raise NotImplementedError

    def __call__(self, x):
        x = np.asarray(check_finite(x), dtype=float)
        return as_float(self.formula(np.abs(x)))

    def transform(self, t):
        t = np.asarray(check_finite(t, "t"), dtype=float)
        return as_float(self.ft(np.abs(t)))

    @property
    def mass(self):
        """integral over the real line, i.e. the Fourier transform at 0"""
        return float(self.ft(np.zeros(())))

    def window_integral(self, a, b, tol=1e-12):
        return integrate(self, a, b, singular=self.singular_points, tol=tol)


@dtc.dataclass(frozen=True)
class SharpKernel(BandLimitedKernel):
    """K(x) = 2 cos(x) / (pi^2 - 4 x^2), Fourier transform cos(pi t / 2) on [-1, 1]"""
    name: str = 'sharp'
    bandlimit: float = 1.
    singular_points: Tuple[float, ...] = (-HALF_PI, HALF_PI)
    numerator_period: float = 2 * math.pi
    numerator_zeros: Tuple[float, ...] = (HALF_PI, 3 * HALF_PI)

    def formula(self, x):
        # with u = x - pi/2 : K = sin(u) / (2u (pi + u)), no 0/0 left at x = pi/2
        u = x - HALF_PI
        return np.sinc(u / np.pi) / (2. * (np.pi + u))

    def ft(self, t):
        return np.where(t < 1., np.cos(HALF_PI * np.minimum(t, 1.)), 0.)

    def numerator(self, x):
        return np.cos(x)

    @property
    def tail(self):
        return RationalTail(coef=-.5, power=2, pole=HALF_PI)


@dtc.dataclass(frozen=True)
class JacksonKernel(BandLimitedKernel):
    """phi(x) = 96 sin(x/4)^4 / (pi x^4), unit mass, Fourier transform a cubic B-spline on [-1, 1]"""
    name: str = 'jackson'
    bandlimit: float = 1.
    singular_points: Tuple[float, ...] = (0.,)
    numerator_period: float = 4 * math.pi
    numerator_zeros: Tuple[float, ...] = (0.,)

    def formula(self, x):
        return 3. / (8. * np.pi) * np.sinc(x / (4. * np.pi)) ** 4

    def ft(self, t):
        s = np.minimum(t, 1.)
        inner = 1. - 6. * s ** 2 + 6. * s ** 3
        outer = 2. * (1. - s) ** 3
        return np.where(s <= .5, inner, outer)

    def numerator(self, x):
        return np.sin(x / 4.) ** 4

    @property
    def tail(self):
        return RationalTail(coef=96. / np.pi, power=4)


@dtc.dataclass(frozen=True)
class FejerKernel(BandLimitedKernel):
    """phi(x) = (sin(x/2) / (x/2))^2, mass 2 pi, Fourier transform 2 pi (1 - |t|)_+"""
    name: str = 'fejer'
    bandlimit: float = 1.
    singular_points: Tuple[float, ...] = (0.,)
    numerator_period: float = 2 * math.pi
    numerator_zeros: Tuple[float, ...] = (0.,)

    def formula(self, x):
        return np.sinc(x / (2. * np.pi)) ** 2

    def ft(self, t):
        return 2. * np.pi * np.maximum(1. - t, 0.)

    def numerator(self, x):
        return np.sin(x / 2.) ** 2

    @property
    def tail(self):
        return RationalTail(coef=4., power=2)


SHARP = SharpKernel()
JACKSON = JacksonKernel()
FEJER = FejerKernel()


def eval_sharp_kernel(x):
    """
    the extremal kernel ``K(x) = 2 cos(x) / (pi^2 - 4 x^2)``.

    Examples
    --------
    >>> eval_sharp_kernel(0.) == 2 / np.pi ** 2
    True
    """
    return SHARP(x)


def eval_sharp_kernel_ft(t):
    """``cos(pi t / 2)`` for ``|t| <= 1``, 0 otherwise"""
    return SHARP.transform(t)


def _trig_moment(x, power, trig):
    def one(x_):
        res = integrate(lambda t: t ** power * np.cos(HALF_PI * t) * trig(x_ * t), 0., 1., tol=1e-13)
        return -res.value / np.pi

    x = np.asarray(check_finite(x), dtype=float)
    if x.ndim == 0:
        return one(float(x))
    return np.array([one(v) for v in x.ravel()]).reshape(x.shape)


def eval_kernel_derivative(x):
    """K'(x) = -(1/pi) int_0^1 t cos(pi t/2) sin(x t) dt"""
    return _trig_moment(x, 1, np.sin)


def eval_kernel_derivative2(x):
    """K''(x) = -(1/pi) int_0^1 t^2 cos(pi t/2) cos(x t) dt"""
    return _trig_moment(x, 2, np.cos)
