import dataclasses as dtc
import math
import warnings
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.special import zeta

from .utils import check_positive

__all__ = [
    'TOL',
    'MAX_SUBDIVISIONS',
    'QuadratureResult',
    'QuadratureError',
    'DivergenceError',
    'IdentityVerdict',
    'RationalTail',
    'TailIntegrand',
    'simpson_weights',
    'integrate',
    'integrate_periodic_tail',
    'check_identity',
]

TOL = 1e-10
MAX_SUBDIVISIONS = 10_000


@dtc.dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float = 0.
    subdivisions: int = 0

    def __add__(self, other):
        if not isinstance(other, QuadratureResult):
            return NotImplemented
        return QuadratureResult.combine([self, other])

    def __neg__(self):
        return dtc.replace(self, value=-self.value)

    def scaled(self, c):
        return QuadratureResult(c * self.value, abs(c) * self.error_estimate, self.subdivisions)

    @staticmethod
    def combine(results):
        results = list(results)
        return QuadratureResult(math.fsum(r.value for r in results),
                                math.fsum(r.error_estimate for r in results),
                                sum(r.subdivisions for r in results))


class QuadratureError(RuntimeError):
    """raised when an integral does not reach its tolerance. ``partial`` holds what was computed."""

    def __init__(self, message, partial=None):
        super(QuadratureError, self).__init__(message)
        self.partial = partial


class DivergenceError(QuadratureError):
    pass


@dtc.dataclass(frozen=True)
class IdentityVerdict:
    passed: bool
    difference: float
    allowance: float

    def __bool__(self):
        return bool(self.passed)


@dtc.dataclass(frozen=True)
class RationalTail:
    """
    decay profile ``w(y) = coef * y**(-power) / (1 - (pole / y)**2)`` for ``y > pole``.

    The sharp kernel is ``cos(x) * RationalTail(-1/2, 2, pi/2)(|x|)``, Fejer and Jackson
    kernels have ``pole = 0``.
    """
    coef: float
    power: int
    pole: float = 0.

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return self.coef * y ** -float(self.power) / (1. - (self.pole / y) ** 2)

    def absolute(self):
        return dtc.replace(self, coef=abs(self.coef))

    def scaled(self, c):
        return dtc.replace(self, coef=self.coef * c)

    def lowered(self, k=1):
        """profile of ``y**k * w(y)``"""
        return dtc.replace(self, power=self.power - k)

    def shifted_sum(self, y, period, head):
        """
        ``sum_{k >= head} w(y + k * period)`` in closed form.

        Expanding ``1 / (1 - (pole/y)**2)`` as a geometric series gives Hurwitz zeta values
        ``sum_k (y + kP)**(-q) = P**(-q) * zeta(q, head + y/P)``.

        Returns
        -------
        value, bound : float
            the sum and a bound on the dropped terms of the pole expansion
        """
        if self.power <= 1:
            raise DivergenceError("Expected a summable profile (power > 1). Got power=%i" % self.power)
        q = head + y / period
        nearest = period * q
        if nearest <= self.pole:
            raise ValueError("Expected y + head * period > pole. Got %s" % str(nearest))
        ratio = (self.pole / nearest) ** 2
        total, m, term = 0., 0, 0.
        while True:
            p = self.power + 2 * m
            term = self.pole ** (2 * m) * period ** -float(p) * zeta(p, q)
            total += term
            if ratio == 0. or ratio ** (m + 1) < 1e-17 or m > 200:
                break
            m += 1
        bound = abs(term) * ratio / (1. - ratio) if ratio > 0 else 0.
        return self.coef * total, abs(self.coef) * bound


@dtc.dataclass(frozen=True)
class TailIntegrand:
    """
    ``periodic(x) * weight(x)`` on a half-line where ``periodic`` has period ``period``.

    ``breaks`` are the kinks or jumps of ``periodic`` as offsets in ``[0, period)``.
    """
    periodic: Callable
    weight: RationalTail
    period: float
    breaks: Tuple[float, ...] = ()

    def __call__(self, x):
        return self.periodic(x) * self.weight(x)


def simpson_weights(n, a, b):
    """composite Simpson weights on ``n`` (odd) equispaced nodes of ``[a, b]``"""
    if n < 3 or n % 2 == 0:
        raise ValueError("Expected an odd number of nodes >= 3. Got %i" % n)
    h = (b - a) / (n - 1)
    w = np.ones(n)
    w[1:-1:2] = 4.
    w[2:-1:2] = 2.
    return w * h / 3.


def _cuts(a, b, points):
    inner = sorted({float(p) for p in points if a < p < b})
    return [a, *inner, b]


def integrate(f, a, b, singular=(), tol=TOL, points=(), limit=MAX_SUBDIVISIONS):
    """
    adaptive Gauss-Kronrod integration of ``f`` over ``[a, b]``.

    The interval is split at every declared singular point and kink before integrating, so the
    integrand is only evaluated strictly inside smooth pieces.

    Parameters
    ----------
    f : callable
        scalar evaluator
    a, b : float
        bounds, ``a < b``
    singular : iterable of float, optional
        points where the formula of ``f`` is 0/0 or discontinuous
    tol : float, optional
        absolute tolerance of the whole integral
    points : iterable of float, optional
        additional split points (kinks)
    limit : int, optional
        subdivision budget of each piece

    Returns
    -------
    result : QuadratureResult

    Raises
    ------
    QuadratureError
        if a piece does not reach its share of ``tol``; ``partial`` holds the sum computed so far.
    """
    check_positive(tol, "tol")
    if not (np.isfinite(a) and np.isfinite(b) and a < b):
        raise ValueError("Expected finite bounds with a < b. Got a=%s, b=%s" % (str(a), str(b)))
    cuts = _cuts(a, b, [*singular, *points])
    share = tol / (len(cuts) - 1)
    pieces = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi <= lo:
            continue
        out = quad(f, lo, hi, epsabs=share, epsrel=0., limit=limit, full_output=1)
        value, abserr, info = out[0], out[1], out[2]
        pieces.append(QuadratureResult(value, abserr, info['last']))
        if len(out) > 3:
            if abserr > share:
                raise QuadratureError("integral over [%r, %r] did not converge: %s" % (lo, hi, out[3]),
                                      QuadratureResult.combine(pieces))
            warnings.warn("quad flagged [%r, %r] (error %.2e within tolerance): %s"
                          % (lo, hi, abserr, out[3].splitlines()[0]))
    return QuadratureResult.combine(pieces)


def integrate_periodic_tail(f, start, period=None, tol=TOL, head=16):
    """
    integral of a ``TailIntegrand`` over ``[start, inf)``.

    The first ``head`` periods are integrated two at a time, each pair as one integrand over a
    period; the remaining periods are summed inside the integrand through
    ``RationalTail.shifted_sum`` which turns the infinite sum into a single integral over one
    period.

    Parameters
    ----------
    f : TailIntegrand
    start : float
        must lie beyond the pole of ``f.weight``
    period : float, optional
        defaults to ``f.period``
    tol : float, optional
    head : int, optional
        number of periods integrated explicitly

    Returns
    -------
    result : QuadratureResult

    Raises
    ------
    DivergenceError
        if the per-period contributions do not decay
    """
    period = f.period if period is None else period
    check_positive(period, "period")
    if start <= f.weight.pole:
        raise ValueError("Expected start > pole of the weight. Got start=%r, pole=%r"
                         % (start, f.weight.pole))
    breaks = [b for b in f.breaks if 0. < b < period]
    budget = tol / 4.

    per_pair, n_pairs = [], (head + 1) // 2
    for k in range(0, head, 2):
        shifts = [start + j * period for j in range(k, min(k + 2, head))]
        # periods k and k + 1 as one integrand
        pair = lambda t, shifts=shifts: sum(f(y + t) for y in shifts)
        per_pair.append(integrate(pair, 0., period, points=breaks, tol=budget / n_pairs))
    head_sum = QuadratureResult.combine(per_pair)

    if f.weight.power <= 1 or abs(per_pair[-1].value) > abs(per_pair[0].value) + tol:
        raise DivergenceError("per-period contributions do not decay (first %.3e, last %.3e)"
                              % (per_pair[0].value, per_pair[-1].value), head_sum)

    truncation = [0.]

    def remainder(t):
        y = start + t
        value, bound = f.weight.shifted_sum(y, period, head)
        g = f.periodic(y)
        truncation[0] = max(truncation[0], abs(g) * bound)
        return g * value

    rest = integrate(remainder, 0., period, points=breaks, tol=budget)
    rest = dtc.replace(rest, error_estimate=rest.error_estimate + truncation[0] * period)
    total = QuadratureResult.combine([head_sum, rest])
    return total


def check_identity(lhs, rhs, tol=TOL):
    """passes iff ``|lhs - rhs| <= tol + lhs.error_estimate + rhs.error_estimate``"""
    if not isinstance(lhs, QuadratureResult):
        lhs = QuadratureResult(float(lhs))
    if not isinstance(rhs, QuadratureResult):
        rhs = QuadratureResult(float(rhs))
    difference = abs(lhs.value - rhs.value)
    allowance = tol + lhs.error_estimate + rhs.error_estimate
    return IdentityVerdict(difference <= allowance, difference, allowance)
