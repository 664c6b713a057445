import math
from typing import Optional

import numpy as np

from ..utils import as_float, check_finite, check_positive

__all__ = [
    'PiecewiseLinear',
    'constant_pwl',
    'dumps_pwl',
    'loads_pwl',
    'save_pwl',
    'load_pwl',
]

_CLOSURE_TOL = 1e-12


class PiecewiseLinear:
    """
    eventually periodic, piecewise-linear function on the real line.

    The function is linear between consecutive knots of a finite prefix ``knots[0] <= ... <= knots[-1]``.
    A knot may be repeated once to encode a jump: the first occurrence carries the left limit,
    the second the right limit, and evaluation is right-continuous.

    Beyond the prefix the function is extended

    - to the right: constantly ``values[-1]`` or periodically with period ``period``, repeating
      ``[knots[-1] - period, knots[-1]]``
    - to the left: constantly ``values[0]`` or periodically with period ``head_period``, repeating
      ``[knots[0], knots[0] + head_period]``

    Parameters
    ----------
    knots : array-like of float
        non-decreasing abscissas, no abscissa more than twice, no jump at the first or last knot
    values : array-like of float
        values at the knots
    period : float, optional
        period of the right tail, constant tail if ``None``
    head_period : float, optional
        period of the left extension, constant extension if ``None``

    Raises
    ------
    ValueError
        if the knots are not valid or a periodic extension does not close up
    """

    def __init__(self, knots, values, period: Optional[float] = None, head_period: Optional[float] = None):
        knots = np.array(knots, dtype=float).ravel()
        values = np.array(values, dtype=float).ravel()
        self.period = None if period is None else float(period)
        self.head_period = None if head_period is None else float(head_period)
        self._validate(knots, values)
        knots.flags.writeable = False
        values.flags.writeable = False
        self.knots, self.values = knots, values
        self._cumulative = self._segment_areas()

    def _validate(self, knots, values):
        if knots.size == 0 or knots.size != values.size:
            raise ValueError("Expected as many values as knots (at least one). Got %i knots and %i values"
                             % (knots.size, values.size))
        check_finite(knots, "knots")
        check_finite(values, "values")
        steps = np.diff(knots)
        if np.any(steps < 0):
            raise ValueError("Expected non-decreasing knots. Got %s" % str(knots))
        flat = steps == 0
        if np.any(flat[1:] & flat[:-1]):
            raise ValueError("Expected each abscissa at most twice. Got %s" % str(knots))
        if flat.size and (flat[0] or flat[-1]):
            raise ValueError("Expected no jump at the first or last knot. Got %s" % str(knots))
        span = knots[-1] - knots[0]
        scale = max(1., float(np.abs(values).max()))
        if self.period is not None:
            check_positive(self.period, "period")
            start = knots[-1] - self.period
            if start < knots[0] - _CLOSURE_TOL or np.sum(np.abs(knots - start) < _CLOSURE_TOL) > 1:
                raise ValueError("Expected the tail period to start at a continuity point of the prefix. "
                                 "Got period %r for knots %s" % (self.period, str(knots)))
            if abs(self._prefix_eval(knots, values, np.array(start)) - values[-1]) > _CLOSURE_TOL * scale:
                raise ValueError("Expected a closing periodic tail f(x_m - P) == f(x_m). Got %r != %r"
                                 % (float(self._prefix_eval(knots, values, np.array(start))), values[-1]))
        if self.head_period is not None:
            check_positive(self.head_period, "head_period")
            if self.head_period > span + _CLOSURE_TOL:
                raise ValueError("Expected head_period <= prefix length. Got %r > %r" % (self.head_period, span))
            stop = knots[0] + self.head_period
            if abs(self._prefix_eval(knots, values, np.array(stop)) - values[0]) > _CLOSURE_TOL * scale:
                raise ValueError("Expected a closing periodic head f(x_0) == f(x_0 + P). Got %r != %r"
                                 % (values[0], float(self._prefix_eval(knots, values, np.array(stop)))))

    # Evaluation

    @staticmethod
    def _prefix_eval(knots, values, x):
        """right-continuous linear interpolation, valid for x in [knots[0], knots[-1]]"""
        if knots.size == 1:
            return np.full(x.shape, values[0])
        i = np.clip(np.searchsorted(knots, x, side='right'), 1, knots.size - 1)
        lo, hi = knots[i - 1], knots[i]
        width = np.where(hi > lo, hi - lo, 1.)
        t = np.clip((x - lo) / width, 0., 1.)
        return values[i - 1] + t * (values[i] - values[i - 1])

    @property
    def tail_start(self):
        return self.knots[-1] - self.period if self.period is not None else self.knots[-1]

    def reduce(self, x):
        """maps x into the prefix where the extensions are periodic"""
        x = np.asarray(x, dtype=float)
        x0, xm = self.knots[0], self.knots[-1]
        if self.period is not None:
            a = xm - self.period
            x = np.where(x > xm, a + np.mod(x - a, self.period), x)
        if self.head_period is not None:
            x = np.where(x < x0, x0 + np.mod(x - x0, self.head_period), x)
        return x

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r = self.reduce(x)
        y = self._prefix_eval(self.knots, self.values, np.clip(r, self.knots[0], self.knots[-1]))
        if self.head_period is None:
            y = np.where(r < self.knots[0], self.values[0], y)
        if self.period is None:
            y = np.where(r > self.knots[-1], self.values[-1], y)
        return as_float(y)

    # Structure

    def segments(self):
        """arrays ``lo, hi, v_lo, v_hi`` of the non-degenerate prefix segments"""
        k, v = self.knots, self.values
        keep = np.diff(k) > 0
        return k[:-1][keep], k[1:][keep], v[:-1][keep], v[1:][keep]

    def tail_segments(self):
        """segments of one tail period ``[tail_start, knots[-1]]``"""
        if self.period is None:
            return tuple(np.empty(0) for _ in range(4))
        a = self.tail_start
        lo, hi, vl, vh = self.segments()
        keep = hi > a + _CLOSURE_TOL
        lo, hi, vl, vh = lo[keep], hi[keep], vl[keep], vh[keep]
        # the period may start inside a segment
        cut = lo < a
        vl = np.where(cut, vl + (vh - vl) * (a - lo) / (hi - lo), vl)
        return np.where(cut, a, lo), hi, vl, vh

    @property
    def slopes(self):
        lo, hi, vl, vh = self.segments()
        return (vh - vl) / (hi - lo)

    @property
    def jumps(self):
        """list of ``(x, left value, right value)`` of the prefix"""
        k, v = self.knots, self.values
        idx = np.flatnonzero(np.diff(k) == 0)
        return [(float(k[i]), float(v[i]), float(v[i + 1])) for i in idx]

    def tail_jumps(self):
        if self.period is None:
            return []
        return [j for j in self.jumps if j[0] > self.tail_start]

    @property
    def is_continuous(self):
        return all(left == right for _, left, right in self.jumps)

    @property
    def lipschitz(self):
        """maximum absolute slope (jumps excluded)"""
        s = self.slopes
        return float(np.abs(s).max()) if s.size else 0.

    @property
    def decrease_rate(self):
        """``max(0, -min slope)`` if every jump goes up, ``inf`` otherwise"""
        if any(right < left for _, left, right in self.jumps):
            return math.inf
        s = self.slopes
        return float(max(0., -s.min())) if s.size else 0.

    def _tail_values(self):
        if self.period is None:
            return np.array([self.values[-1]])
        return self.values[self.knots >= self.tail_start - _CLOSURE_TOL]

    @property
    def tail_max(self):
        return float(self._tail_values().max())

    @property
    def tail_min(self):
        return float(self._tail_values().min())

    @property
    def tail_sup(self):
        """``limsup |f(x)|`` as ``x -> inf``"""
        return max(abs(self.tail_max), abs(self.tail_min))

    def breakpoints_in(self, lo, hi):
        """all knots of the extended function (periodic copies included) inside ``[lo, hi]``"""
        k = np.unique(self.knots)
        out = [k[(k >= lo) & (k <= hi)]]
        xm, x0 = self.knots[-1], self.knots[0]
        if self.period is not None and hi > xm:
            pattern = k[(k >= self.tail_start) & (k < xm)]
            for n in range(1, int(math.ceil((hi - xm) / self.period)) + 2):
                shifted = pattern + n * self.period
                out.append(shifted[(shifted >= max(lo, xm)) & (shifted <= hi)])
        if self.head_period is not None and lo < x0:
            pattern = k[(k > x0) & (k <= x0 + self.head_period)]
            for n in range(1, int(math.ceil((x0 - lo) / self.head_period)) + 2):
                shifted = pattern - n * self.head_period
                out.append(shifted[(shifted >= lo) & (shifted <= min(hi, x0))])
        return np.unique(np.concatenate(out))

    def zeros_in(self, lo, hi):
        """zeros of the linear pieces inside ``(lo, hi)``"""
        pts = np.unique(np.r_[lo, self.breakpoints_in(lo, hi), hi])
        p, q = pts[:-1], pts[1:]
        m = .5 * (p + q)
        fp, fm = np.asarray(self(p)), np.asarray(self(m))
        fq = fp + 2. * (fm - fp)
        cross = (fp * fq < 0)
        out = p[cross] + (q[cross] - p[cross]) * fp[cross] / (fp[cross] - fq[cross])
        return np.sort(out[(out > lo) & (out < hi)])

    # Calculus

    def _segment_areas(self):
        k, v = self.knots, self.values
        return np.r_[0., np.cumsum(np.diff(k) * (v[:-1] + v[1:]) / 2.)]

    def _prefix_primitive(self, x):
        """int_{x0}^x f for x in the prefix"""
        k, v = self.knots, self.values
        if k.size == 1:
            return np.zeros(x.shape)
        i = np.clip(np.searchsorted(k, x, side='right'), 1, k.size - 1)
        lo, hi = k[i - 1], k[i]
        width = np.where(hi > lo, hi - lo, 1.)
        d = np.clip(x - lo, 0., None)
        slope = (v[i] - v[i - 1]) / width
        return self._cumulative[i - 1] + v[i - 1] * d + slope * d * d / 2.

    def primitive(self, x):
        """``int_{x0}^x f``, also for ``x`` outside the prefix"""
        x = np.asarray(x, dtype=float)
        k, v = self.knots, self.values
        x0, xm = k[0], k[-1]
        inner = self._prefix_primitive(np.clip(x, x0, xm))
        out = inner
        if self.period is None:
            out = np.where(x > xm, self._cumulative[-1] + v[-1] * (x - xm), out)
        else:
            a = self.tail_start
            base = self._prefix_primitive(np.array(a))
            per_period = self._cumulative[-1] - base
            n = np.floor(np.maximum(x - xm, 0.) / self.period)
            r = np.maximum(x - xm, 0.) - n * self.period
            right = self._cumulative[-1] + n * per_period + self._prefix_primitive(a + r) - base
            out = np.where(x > xm, right, out)
        if self.head_period is None:
            out = np.where(x < x0, v[0] * (x - x0), out)
        else:
            per_period = self._prefix_primitive(np.array(x0 + self.head_period))
            n = np.floor((x - x0) / self.head_period)
            r = x - x0 - n * self.head_period
            out = np.where(x < x0, n * per_period + self._prefix_primitive(x0 + r), out)
        return as_float(out)

    def integral(self, a, b):
        """exact ``int_a^b f``"""
        return float(self.primitive(b) - self.primitive(a))

    # Transformations

    def shifted(self, h):
        """``x -> f(x + h)``"""
        return PiecewiseLinear(self.knots - h, self.values, self.period, self.head_period)

    def scaled(self, c):
        return PiecewiseLinear(self.knots, c * self.values, self.period, self.head_period)

    def plus(self, c):
        return PiecewiseLinear(self.knots, self.values + c, self.period, self.head_period)

    def __neg__(self):
        return self.scaled(-1.)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseLinear):
            return NotImplemented
        return (np.array_equal(self.knots, other.knots) and np.array_equal(self.values, other.values)
                and self.period == other.period and self.head_period == other.head_period)

    __hash__ = None

    def __repr__(self):
        return "PiecewiseLinear(knots=%s, values=%s, period=%r, head_period=%r)" % (
            np.array2string(self.knots, precision=4), np.array2string(self.values, precision=4),
            self.period, self.head_period)


def constant_pwl(c):
    return PiecewiseLinear([0.], [c])


# Serialization

def dumps_pwl(f):
    """
    plain-text form of ``f``::

        head periodic P          (only with a periodic left extension)
        prefix x0 v0 x1 v1 ...
        tail periodic P | tail constant c

    numbers are written with ``repr`` so reading them back is exact.
    """
    lines = []
    if f.head_period is not None:
        lines.append("head periodic %r" % f.head_period)
    lines.append(" ".join(["prefix"] + ["%r %r" % (float(x), float(v)) for x, v in zip(f.knots, f.values)]))
    if f.period is not None:
        lines.append("tail periodic %r" % f.period)
    else:
        lines.append("tail constant %r" % float(f.values[-1]))
    return "\n".join(lines) + "\n"


def loads_pwl(text):
    head_period, period, prefix, constant = None, None, None, None
    for line in text.strip().splitlines():
        words = line.split()
        if not words:
            continue
        if words[0] == 'head' and words[1:2] == ['periodic'] and len(words) == 3:
            head_period = float(words[2])
        elif words[0] == 'prefix':
            numbers = [float(w) for w in words[1:]]
            if not numbers or len(numbers) % 2:
                raise ValueError("Expected pairs 'x v' after 'prefix'. Got %r" % line)
            prefix = numbers
        elif words[0] == 'tail' and len(words) == 3 and words[1] in ('periodic', 'constant'):
            if words[1] == 'periodic':
                period = float(words[2])
            else:
                constant = float(words[2])
        else:
            raise ValueError("Expected 'head', 'prefix' or 'tail' lines. Got %r" % line)
    if prefix is None or (period is None and constant is None):
        raise ValueError("Expected a 'prefix' and a 'tail' line. Got %r" % text)
    f = PiecewiseLinear(prefix[0::2], prefix[1::2], period, head_period)
    if constant is not None and constant != f.values[-1]:
        raise ValueError("Expected the constant tail to equal the last value. Got %r != %r"
                         % (constant, float(f.values[-1])))
    return f


def save_pwl(f, path):
    with open(path, "w") as fh:
        fh.write(dumps_pwl(f))
    return path


def load_pwl(path):
    with open(path, "r") as fh:
        return loads_pwl(fh.read())
