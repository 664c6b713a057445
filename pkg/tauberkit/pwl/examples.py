import dataclasses as dtc
import math

import numpy as np

from .function import PiecewiseLinear
from ..utils import as_float, check_positive

__all__ = [
    'build_two_sided_extremal',
    'build_alpha',
    'build_one_sided_extremal',
    'build_gamma',
    'build_gamma_tilde',
    'rescale',
    'ZigZag',
    'JumpFunction',
]

PI = math.pi
HALF_PI = math.pi / 2


def build_two_sided_extremal():
    """
    0 for x <= 0, slope 1 up to pi/2, then the slope +-1 triangle wave of period 2 pi
    between -pi/2 and pi/2.
    """
    return PiecewiseLinear([0., HALF_PI, 3 * HALF_PI, 2 * PI], [0., HALF_PI, -HALF_PI, 0.], period=2 * PI)


def build_alpha():
    """the even triangle wave with alpha(0) = pi/2, alpha(+-pi/2) = 0 and period 2 pi"""
    return PiecewiseLinear([-PI, 0., PI], [-HALF_PI, HALF_PI, -HALF_PI],
                           period=2 * PI, head_period=2 * PI)


def build_one_sided_extremal():
    """
    0 for x <= 0, -x on [0, 1], -x + N on [N - 1, N + 1] for even N: a slope -1 sawtooth
    of period 2 with upward jumps of 2 at the odd integers.
    """
    return PiecewiseLinear([0., 1., 1., 3., 3., 4.], [0., -1., 1., -1., 1., 0.], period=2.)


def _even_from_right(pairs, period):
    """even function from its knots on x >= 0 (first knot at 0)"""
    right = [(x, v) for x, v in pairs]
    left = [(-x, v) for x, v in reversed(right[1:])]
    knots, values = zip(*(left + right))
    return PiecewiseLinear(knots, values, period=period, head_period=period)


def build_gamma(beta0, beta1):
    """
    the comparison function of the one-sided argument::

        beta0 + alpha        |x| <= pi/2
        beta1 / 2 + alpha    pi/2 <= |x| <= pi
        beta2 + alpha        pi <= |x| <= 3 pi/2,  beta2 = -5 beta1 / 2
        +-beta1 + alpha      elsewhere, with the sign of alpha

    Parameters
    ----------
    beta0 : float
    beta1 : float
        ``beta1 > 0``

    Returns
    -------
    gamma : PiecewiseLinear
        even, with jumps at +-pi/2, +-pi, +-3pi/2 and at the zeros of alpha beyond
    """
    if not beta1 > 0:
        raise ValueError("Expected beta1 > 0. Got %s" % str(beta1))
    b0, b1 = float(beta0), float(beta1)
    b2 = -2.5 * b1
    pairs = [
        (0., b0 + HALF_PI),
        (HALF_PI, b0), (HALF_PI, b1 / 2),
        (PI, b1 / 2 - HALF_PI), (PI, b2 - HALF_PI),
        (3 * HALF_PI, b2), (3 * HALF_PI, b1),
        (2 * PI, b1 + HALF_PI),
        (5 * HALF_PI, b1), (5 * HALF_PI, -b1),
        (3 * PI, -b1 - HALF_PI),
        (7 * HALF_PI, -b1), (7 * HALF_PI, b1),
        (4 * PI, b1 + HALF_PI),
    ]
    return _even_from_right(pairs, 2 * PI)


def build_gamma_tilde(beta1):
    """``beta1 + alpha`` where ``alpha >= 0``, ``-beta1 + alpha`` where ``alpha < 0``"""
    b1 = float(beta1)
    return PiecewiseLinear(
        [-PI, -HALF_PI, -HALF_PI, 0., HALF_PI, HALF_PI, PI],
        [-b1 - HALF_PI, -b1, b1, b1 + HALF_PI, b1, -b1, -b1 - HALF_PI],
        period=2 * PI, head_period=2 * PI)


def rescale(f, M, lam):
    """
    ``x -> lam * f(x / lam) / M``.

    Examples
    --------
    >>> tau = build_two_sided_extremal()
    >>> rescale(tau, 2., 1.).lipschitz
    0.5
    """
    check_positive(M, "M")
    check_positive(lam, "lambda")
    stretch = lambda p: None if p is None else p * lam
    return PiecewiseLinear(f.knots * lam, f.values * lam / M, stretch(f.period), stretch(f.head_period))


@dtc.dataclass(frozen=True)
class ZigZag:
    """
    pointed zig-zag on the window [-pi/2, pi/2]: slopes +1 then -1 around ``c`` (upper)
    or -1 then +1 (lower), with value ``peak`` at ``c``.
    """
    c: float
    peak: float
    orientation: str = 'upper'

    def __post_init__(self):
        if not -HALF_PI <= self.c <= HALF_PI:
            raise ValueError("Expected c in [-pi/2, pi/2]. Got %s" % str(self.c))
        if self.orientation not in ('upper', 'lower'):
            raise ValueError("Expected orientation 'upper' or 'lower'. Got %r" % self.orientation)

    @property
    def sign(self):
        return 1. if self.orientation == 'upper' else -1.

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return as_float(self.peak - self.sign * np.abs(x - self.c))

    @property
    def start_value(self):
        return self(-HALF_PI)

    @property
    def end_value(self):
        return self(HALF_PI)

    def to_pwl(self):
        knots = np.unique([-HALF_PI, self.c, HALF_PI])
        return PiecewiseLinear(knots, self(knots))


@dtc.dataclass(frozen=True)
class JumpFunction:
    """
    ``z + (x + pi/2)`` on [-pi/2, 0] and ``2 beta1 - z + pi/2 - x`` on (0, pi/2], with
    ``z = left_start``; the jump at 0 is ``2 (beta1 - z)``.
    """
    left_start: float
    beta1: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        z, b1 = self.left_start, self.beta1
        return as_float(np.where(x <= 0, z + x + HALF_PI, 2 * b1 - z + HALF_PI - x))

    @property
    def jump(self):
        return 2. * (self.beta1 - self.left_start)

    def to_pwl(self):
        z, b1 = self.left_start, self.beta1
        return PiecewiseLinear([-HALF_PI, 0., 0., HALF_PI],
                               [z, z + HALF_PI, 2 * b1 - z + HALF_PI, 2 * b1 - z])
