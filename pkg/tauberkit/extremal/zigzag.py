import dataclasses as dtc
import math
import warnings
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .window import check_condition, window_grid
from ..kernels import HALF_PI, SHARP
from ..pwl import ZigZag
from ..quadrature import integrate

__all__ = [
    'SCAN_STEP',
    'ZigZagOptimum',
    'zigzag_objective',
    'min_over_zigzag',
    'fallback_zigzag',
    'SingleCrossingVerdict',
    'check_single_crossing',
    'CrossingInstance',
    'random_crossing_instance',
]

SCAN_STEP = np.pi / 2000


def _orientation(N):
    return 'upper' if N % 2 == 0 else 'lower'


def _scan(grid, c, s, I):
    """objective, peak, start value and feasibility of the zig-zags peaked at ``c`` (array)"""
    c = np.atleast_1d(np.asarray(c, dtype=float))
    dist = np.abs(grid.x[None, :] - c[:, None])
    A = dist @ (grid.weights * grid.kernel)
    B = dist @ (grid.weights * grid.translate)
    C, CN = grid.mass, grid.translate_mass
    if grid.N % 2 == 0:
        peak = (I + A) / C
        objective = peak * CN - B
        start = peak - (c + HALF_PI)
        excess = start - s
    else:
        peak = (I - A) / C
        objective = peak * CN + B
        start = peak + (c + HALF_PI)
        excess = s - start
    return objective, peak, start, excess


@dtc.dataclass(frozen=True)
class ZigZagOptimum:
    value: float
    zigzag: Optional[ZigZag]
    N: int
    s: float
    I: float
    n: int

    @property
    def feasible(self):
        return self.zigzag is not None


def zigzag_objective(N, c, s, I, n=201):
    """
    the zig-zag peaked at ``c`` with ``int z K = I`` (grid integrals), its objective
    ``int z K(. + N pi)`` and whether it meets the start condition.

    Returns
    -------
    objective : float
    zigzag : ZigZag
    feasible : bool
    """
    grid = window_grid(N, n)
    objective, peak, start, excess = _scan(grid, c, s, I)
    return float(objective[0]), ZigZag(float(c), float(peak[0]), _orientation(N)), bool(excess[0] <= 1e-12)


def min_over_zigzag(N, s, I, n=201, step=SCAN_STEP):
    """
    minimum of ``int z(x) K(x + N pi) dx`` over pointed zig-zags with ``int z K = I`` and
    ``z(-pi/2) <= s`` (upper, even ``N``) or ``z(-pi/2) >= s`` (lower, odd ``N``).

    The peak location is scanned with ``step`` and refined by bounded Brent search around the best
    grid point; the smallest ``c`` wins ties. Integrals use the Simpson weights of the
    ``n``-point window grid so that the result is comparable with ``min_over_lipschitz``.

    Returns
    -------
    optimum : ZigZagOptimum
        with ``zigzag=None`` and ``value=inf`` when no zig-zag is feasible
    """
    if int(N) != N or N < 1:
        raise ValueError("Expected a positive integer N. Got %s" % str(N))
    grid = window_grid(int(N), n)
    cs = np.linspace(-HALF_PI, HALF_PI, int(round(np.pi / step)) + 1)
    objective, peak, start, excess = _scan(grid, cs, s, I)
    feasible = excess <= 1e-12
    if not np.any(feasible):
        warnings.warn("no feasible zig-zag for N=%i, s=%r, I=%r" % (N, s, I))
        return ZigZagOptimum(math.inf, None, int(N), s, I, n)
    i = int(np.argmin(np.where(feasible, objective, np.inf)))
    best_c, best_value = cs[i], objective[i]

    lo, hi = cs[max(i - 1, 0)], cs[min(i + 1, cs.size - 1)]
    excess_at = lambda c: float(_scan(grid, c, s, I)[3][0])
    if excess_at(lo) > 0:
        # the feasible peaks form an interval [c*, pi/2]
        lo = best_c if excess_at(best_c) >= 0 else brentq(excess_at, lo, best_c, xtol=1e-14)
    if hi > lo:
        res = minimize_scalar(lambda c: float(_scan(grid, c, s, I)[0][0]), bounds=(lo, hi),
                              method='bounded', options=dict(xatol=1e-12))
        if res.fun < best_value and excess_at(res.x) <= 1e-12:
            best_c, best_value = float(res.x), float(res.fun)
    _, best_peak, _, _ = _scan(grid, best_c, s, I)
    return ZigZagOptimum(float(best_value), ZigZag(float(best_c), float(best_peak[0]), _orientation(N)),
                         int(N), s, I, n)


def fallback_zigzag(N, s, I):
    """
    the zig-zag used when ``I`` lies outside the attainable window on the side the
    reduction cannot handle: slope 1 from ``s`` (even ``N``, ``I`` above) or slope -1 from
    ``s`` (odd ``N``, ``I`` below). ``None`` in every other case.
    """
    verdict = check_condition(s, I)
    if N % 2 == 0 and I > verdict.upper:
        return ZigZag(HALF_PI, s + np.pi, 'upper')
    if N % 2 == 1 and I < verdict.lower:
        return ZigZag(HALF_PI, s - np.pi, 'lower')
    return None


# Single crossing comparison

@dtc.dataclass(frozen=True)
class SingleCrossingVerdict:
    holds: bool
    precondition: bool
    reason: str
    lhs: float
    rhs: float
    crossing: float

    def __bool__(self):
        return bool(self.holds)


def check_single_crossing(f, g, phi, a, b, weight=SHARP, tol=1e-10, balance_tol=1e-9, n_check=257, points=()):
    """
    compare ``int f phi w`` with ``int g phi w`` on ``[a, b]``.

    If ``int f w = int g w``, ``f - g`` changes sign once from ``+`` to ``-`` and ``phi`` is
    non-increasing against a positive ``w`` (or non-decreasing against a negative one), then
    ``int f phi w >= int g phi w``. The verdict reports the inequality and, separately, whether
    those hypotheses hold on a check grid.

    ``points`` are kinks of ``f``, ``g`` or ``phi`` where the integrals are split.
    """
    balance = integrate(lambda x: (f(x) - g(x)) * weight(x), a, b, points=points, tol=1e-12).value
    lhs = integrate(lambda x: f(x) * phi(x) * weight(x), a, b, points=points, tol=1e-12).value
    rhs = integrate(lambda x: g(x) * phi(x) * weight(x), a, b, points=points, tol=1e-12).value

    x = np.linspace(a, b, n_check)
    d = np.array([f(v) - g(v) for v in x])
    p = np.array([phi(v) for v in x])
    w = np.array([weight(v) for v in x])
    reasons = []
    if abs(balance) > balance_tol:
        reasons.append("weighted integrals differ by %.3e" % abs(balance))
    negative = np.flatnonzero(d < -1e-12)
    crossing = float(x[negative[0]]) if negative.size else float(b)
    if negative.size and np.any(d[negative[0]:] > 1e-12):
        reasons.append("f - g changes sign more than once")
    if np.all(w >= 0):
        monotone = np.all(np.diff(p) <= 1e-14)
    elif np.all(w <= 0):
        monotone = np.all(np.diff(p) >= -1e-14)
    else:
        monotone = False
        reasons.append("weight changes sign")
    if not monotone and "weight changes sign" not in reasons:
        reasons.append("phi has the wrong monotonicity")
    return SingleCrossingVerdict(bool(lhs >= rhs - tol), not reasons, "; ".join(reasons),
                                 lhs, rhs, crossing)


@dtc.dataclass(frozen=True)
class CrossingInstance:
    f: Callable
    g: Callable
    phi: Callable
    a: float
    b: float
    weight: Callable
    points: Tuple[float, ...] = ()


def random_crossing_instance(rng, a=-HALF_PI, b=HALF_PI, mirrored=False):
    """
    a random pair ``f, g`` with one sign change of ``f - g`` and ``int f K = int g K``, plus a
    monotone ``phi``. ``mirrored`` uses the weight ``-K`` and a non-decreasing ``phi``.
    ``f - g`` has a kink at the crossing, listed in ``points``.
    """
    weight = (lambda x: -SHARP(x)) if mirrored else SHARP
    c = rng.uniform(a + .1 * (b - a), b - .1 * (b - a))
    g0, g1, g2, g3 = rng.normal(size=4)
    r0, r1 = rng.normal(size=2) * .5
    p0, p1, p2, p3 = rng.normal(), rng.exponential(), rng.exponential(), rng.exponential() * 3
    m = rng.uniform(a, b)
    sign = 1. if mirrored else -1.

    g = lambda x: g0 + g1 * x + g2 * math.sin(g3 * x)
    bump = lambda x: (c - x) * math.exp(r0 + r1 * x)
    left = integrate(lambda x: bump(x) * weight(x), a, c, tol=1e-13).value
    right = integrate(lambda x: -bump(x) * weight(x), c, b, tol=1e-13).value
    lam = left / right
    d = lambda x: bump(x) if x <= c else lam * bump(x)
    f = lambda x: g(x) + d(x)
    phi = lambda x: p0 + sign * (p1 * x + p2 * math.tanh(p3 * (x - m)))
    return CrossingInstance(f, g, phi, a, b, weight, (c,))
