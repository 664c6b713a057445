import dataclasses as dtc
import math
from fractions import Fraction

from scipy.special import sici

from ..kernels import FEJER, HALF_PI, SHARP, numerator_zeros_in
from ..pwl import build_gamma, constant_pwl
from ..quadrature import QuadratureResult, TailIntegrand, integrate, integrate_periodic_tail
from ..utils import check_positive

__all__ = [
    'FEJER_WINDOW',
    'windowed_convolution',
    'line_integral',
    'full_convolution',
    'gamma_margin',
    'gamma_integral',
    'FejerReport',
    'fejer_argument',
    'fejer_window_closed_form',
    'fejer_lower_estimate',
]

FEJER_WINDOW = (-2.35, 5.85)


def _symmetric(points):
    return tuple(sorted({p for q in points for p in (q, -q)}))


def _common_period(P, Q):
    ratio = Fraction(P / Q).limit_denominator(12)
    L = ratio.denominator * P
    if abs(L - ratio.numerator * Q) > 1e-9 * L:
        raise ValueError("Expected commensurable periods. Got %r and %r" % (P, Q))
    return L


def windowed_convolution(f, kernel=SHARP, y=0., tol=1e-11):
    """``int_{-pi/2}^{pi/2} f(x + y) K(x) dx``, split at the kinks and jumps of ``f``"""
    g = f.shifted(y)
    res = integrate(lambda x: float(g(x) * kernel(x)), -HALF_PI, HALF_PI,
                    singular=_symmetric(kernel.singular_points),
                    points=g.breakpoints_in(-HALF_PI, HALF_PI), tol=tol)
    return res.value


def _tail(evaluate, breakpoints, zeros, periodic, constant, kernel, start, absolute, tol):
    """
    ``int_start^inf g(x) kernel(x) dx`` where ``g`` is given on ``[start, inf)`` by ``evaluate``
    and is either ``periodic`` (its period) or equal to ``constant``.
    """
    if periodic is None and constant == 0.:
        return QuadratureResult(0.)
    Q = kernel.numerator_period
    L = Q if periodic is None else _common_period(periodic, Q)
    offsets = [z - start for z in numerator_zeros_in(kernel, start, start + L)]
    if periodic is not None:
        offsets += [b - start for b in breakpoints(start, start + L)]
        if absolute:
            offsets += [z - start for z in zeros(start, start + L)]
    breaks = tuple(sorted({float(b) for b in offsets if 0. < b < L}))
    if absolute:
        periodic_part = lambda x: abs(float(evaluate(x) * kernel.numerator(x)))
        weight = kernel.tail.absolute()
    else:
        periodic_part = lambda x: float(evaluate(x) * kernel.numerator(x))
        weight = kernel.tail
    return integrate_periodic_tail(TailIntegrand(periodic_part, weight, L, breaks), start=start, tol=tol)


def line_integral(f, kernel=SHARP, h=0., absolute=False, tol=1e-9):
    """
    ``int_R f(x + h) K(x) dx`` (or ``int_R |f(x + h) K(x)| dx``) for an eventually periodic
    piecewise linear ``f`` and a kernel with a rational tail.

    The line is cut at ``-R_left`` and ``R_right``, beyond which ``f`` is periodic or constant.
    The middle part is integrated piece by piece between kinks, the two tails by
    ``integrate_periodic_tail`` over the common period of ``f`` and the kernel's numerator (the
    left tail is folded onto the right half-line, kernels being even).

    Returns
    -------
    result : QuadratureResult
    """
    check_positive(tol, "tol")
    g = f.shifted(h)
    R0 = max(2. * kernel.tail.pole, kernel.numerator_period)
    right = max(R0, float(g.tail_start) if g.period is not None else float(g.knots[-1]))
    left = max(R0, -float(g.knots[0]))

    tails = []
    tails.append(_tail(g, g.breakpoints_in, g.zeros_in, g.period, float(g.values[-1]),
                       kernel, right, absolute, tol / 3.))
    mirror_breaks = lambda lo, hi: -g.breakpoints_in(-hi, -lo)[::-1]
    mirror_zeros = lambda lo, hi: -g.zeros_in(-hi, -lo)[::-1]
    tails.append(_tail(lambda y: g(-y), mirror_breaks, mirror_zeros, g.head_period, float(g.values[0]),
                       kernel, left, absolute, tol / 3.))

    lo, hi = -left, right
    points = list(g.breakpoints_in(lo, hi))
    if absolute:
        points += list(g.zeros_in(lo, hi))
        points += [z for z in numerator_zeros_in(kernel, 0., max(-lo, hi))]
        points += [-z for z in numerator_zeros_in(kernel, 0., max(-lo, hi))]
        integrand = lambda x: abs(float(g(x) * kernel(x)))
    else:
        integrand = lambda x: float(g(x) * kernel(x))
    middle = integrate(integrand, lo, hi, singular=_symmetric(kernel.singular_points),
                       points=points, tol=tol / 3.)
    return QuadratureResult.combine([middle, *tails])


def full_convolution(f, kernel=SHARP, h=0., tol=1e-9):
    """``(f * K)(h) = int_R f(x + h) K(x) dx``"""
    return line_integral(f, kernel, h, absolute=False, tol=tol).value


def gamma_margin(beta1):
    """
    ``48 pi beta1 int_0^{pi/2} x cos x / ((pi^2 - 4x^2)(9 pi^2 - 4x^2)) dx``, the excess of
    ``int gamma K`` over ``int gamma_tilde K`` on each of the intervals ``pi/2 <= |x| <= 3 pi/2``.
    """
    check_positive(beta1, "beta1")
    # cos x / (pi^2 - 4x^2) = K(x) / 2 has no pole at pi/2
    integrand = lambda x: x * SHARP(x) / (2. * (9. * math.pi ** 2 - 4. * x * x))
    return 48. * math.pi * beta1 * integrate(integrand, 0., HALF_PI, tol=1e-13).value


def gamma_integral(beta0, beta1, tol=1e-9):
    """
    ``int_R gamma K`` by ``full_convolution`` and its reference value
    ``2 gamma_margin(beta1) + (beta0 - beta1) int_{-pi/2}^{pi/2} K``.

    Returns
    -------
    value, reference : float
    """
    value = full_convolution(build_gamma(beta0, beta1), SHARP, 0., tol=tol)
    window = SHARP.window_integral(-HALF_PI, HALF_PI).value
    return value, 2. * gamma_margin(beta1) + (beta0 - beta1) * window


@dtc.dataclass(frozen=True)
class FejerReport:
    S: float
    epsilon: float
    window_mass: float
    weighted_mass: float
    total_mass: float
    mass_holds: bool
    weighted_holds: bool

    @property
    def doubled_mass(self):
        """``2 int_window phi``"""
        return 2. * self.window_mass

    @property
    def reference(self):
        """``4.1 int_R phi``"""
        return 4.1 * self.total_mass

    @property
    def holds(self):
        return bool(self.mass_holds and self.weighted_holds)


def _fejer_moments():
    a, b = FEJER_WINDOW
    mass = integrate(FEJER, a, b, singular=(0.,), tol=1e-12).value
    moment = integrate(lambda x: (x - a) * FEJER(x), a, b, singular=(0.,), tol=1e-12).value
    total = line_integral(constant_pwl(1.), FEJER, tol=1e-10).value
    return mass, moment, total


def fejer_argument(S=4.2, epsilon=1e-3):
    """
    the quadrature constants behind ``limsup |tau| <= 4.1 M / lambda`` with the Fejer kernel
    ``phi`` on the window ``[-2.35, 5.85]``, and the two strict inequalities that make the
    argument work for a given ``S > 4.1``::

        2 int_window phi > (1 + epsilon / (S - 4.1)) int_R phi
        int_window (8.2 - (x + 2.35)) phi > 4.1 int_R phi + epsilon
    """
    if not S > 4.1:
        raise ValueError("Expected S > 4.1. Got %s" % str(S))
    check_positive(epsilon, "epsilon")
    mass, moment, total = _fejer_moments()
    weighted = 8.2 * mass - moment
    return FejerReport(S, epsilon, mass, weighted, total,
                       bool(2. * mass > (1. + epsilon / (S - 4.1)) * total),
                       bool(weighted > 4.1 * total + epsilon))


def fejer_window_closed_form(window=FEJER_WINDOW):
    """
    ``(int_a^b phi, int_a^b (x - a) phi)`` from the sine and cosine integrals.

    ``int phi = 2 (Si(x) - 2 sin(x/2)^2 / x)`` and ``int x phi = 2 (log|x| - Ci(|x|))``;
    both ends of the window must be non-zero.
    """
    a, b = window
    if a == 0. or b == 0. or not a < b:
        raise ValueError("Expected a window a < b with non-zero ends. Got %r" % (window,))

    def primitive(x):
        si, _ = sici(x)
        return 2. * (si - 2. * math.sin(x / 2.) ** 2 / x)

    def first_moment(x):
        _, ci = sici(abs(x))
        return 2. * (math.log(abs(x)) - ci)

    mass = float(primitive(b) - primitive(a))
    return mass, float(first_moment(b) - first_moment(a)) - a * mass


def fejer_lower_estimate(S=4.2, epsilon=1e-3):
    """
    lower estimate of ``int tau(x + Y + 2.35) phi(x) dx`` when ``tau(Y) >= S - epsilon``,
    ``tau >= -S - epsilon`` and ``tau`` decreases at most with slope 1::

        -(S + epsilon) int_{outside} phi + int_window (S - epsilon - (x + 2.35)) phi

    It exceeds ``epsilon`` when ``fejer_argument(S, epsilon)`` holds.
    """
    if not S > 4.1:
        raise ValueError("Expected S > 4.1. Got %s" % str(S))
    check_positive(epsilon, "epsilon")
    mass, moment, total = _fejer_moments()
    return -(S + epsilon) * (total - mass) + (S - epsilon) * mass - moment
