import dataclasses as dtc
from functools import lru_cache

import numpy as np

from ..kernels import HALF_PI, SHARP
from ..quadrature import integrate, simpson_weights

__all__ = [
    'window_mass',
    'window_moment',
    'ConditionVerdict',
    'check_condition',
    'WindowGrid',
    'window_grid',
]


@lru_cache()
def window_mass():
    """``int_{-pi/2}^{pi/2} K``"""
    return SHARP.window_integral(-HALF_PI, HALF_PI).value


@lru_cache()
def window_moment():
    """``int_{-pi/2}^{pi/2} (x + pi/2) K``"""
    return integrate(lambda x: (x + HALF_PI) * SHARP(x), -HALF_PI, HALF_PI,
                     singular=SHARP.singular_points, tol=1e-12).value


@dtc.dataclass(frozen=True)
class ConditionVerdict:
    holds: bool
    lower: float
    upper: float

    def __bool__(self):
        return bool(self.holds)


def check_condition(s, I):
    """
    whether a 1-Lipschitz function on the window starting at ``s`` can have ``int f K = I``:
    ``int (s - (x + pi/2)) K <= I <= int (s + (x + pi/2)) K``.
    """
    C, M1 = window_mass(), window_moment()
    lower, upper = s * C - M1, s * C + M1
    return ConditionVerdict(bool(lower <= I <= upper), lower, upper)


@dtc.dataclass(frozen=True, eq=False)
class WindowGrid:
    """uniform grid on [-pi/2, pi/2] with Simpson weights and the kernel and its N-th translate"""
    N: int
    n: int
    x: np.ndarray
    weights: np.ndarray
    kernel: np.ndarray
    translate: np.ndarray

    @property
    def step(self):
        return np.pi / (self.n - 1)

    @property
    def mass(self):
        return float(self.weights @ self.kernel)

    @property
    def translate_mass(self):
        return float(self.weights @ self.translate)


@lru_cache(maxsize=64)
def window_grid(N, n):
    if n < 3 or n % 2 == 0:
        raise ValueError("Expected an odd grid size. Got %s" % str(n))
    x = np.linspace(-HALF_PI, HALF_PI, n)
    w = simpson_weights(n, -HALF_PI, HALF_PI)
    grid = WindowGrid(N, n, x, w, SHARP(x), SHARP(x + N * np.pi))
    for arr in (grid.x, grid.weights, grid.kernel, grid.translate):
        arr.flags.writeable = False
    return grid
