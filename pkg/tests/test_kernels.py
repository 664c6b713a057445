import math

import numpy as np
import pytest

from tauberkit.kernels import (DIVERGENT, FEJER, HALF_PI, JACKSON, SHARP, argextremum_ratio, eval_kernel_derivative,
                               eval_kernel_derivative2, eval_ratio, eval_sharp_kernel, eval_sharp_kernel_ft,
                               extremum_location, first_moment_periods, kernel_constant, numerator_zeros_in)


def test_sharp_kernel_values():
    assert eval_sharp_kernel(0.) == pytest.approx(2. / math.pi ** 2, rel=1e-15)
    assert abs(eval_sharp_kernel(HALF_PI) - 1. / (2. * math.pi)) <= 1e-12
    assert eval_sharp_kernel(-HALF_PI) == eval_sharp_kernel(HALF_PI)
    for x in (.3, 2., 10., -7.5):
        assert eval_sharp_kernel(x) == pytest.approx(2. * math.cos(x) / (math.pi ** 2 - 4. * x * x), rel=1e-12)


def test_sharp_kernel_is_even_and_vectorized():
    x = np.linspace(-20., 20., 1001)
    y = eval_sharp_kernel(x)
    assert isinstance(y, np.ndarray) and y.shape == x.shape
    assert np.allclose(y, y[::-1], rtol=0., atol=1e-14)
    assert np.all(np.isfinite(y))


def test_sharp_kernel_rejects_non_finite():
    with pytest.raises(ValueError):
        eval_sharp_kernel(np.nan)


@pytest.mark.parametrize("t, expected", [
    (0., 1.),
    (.5, math.cos(math.pi / 4)),
    (-.5, math.cos(math.pi / 4)),
    (1., 0.),
    (1.5, 0.),
])
def test_sharp_kernel_ft(t, expected):
    assert eval_sharp_kernel_ft(t) == pytest.approx(expected, abs=1e-15)


def test_kernel_masses():
    assert SHARP.mass == 1.
    assert JACKSON.mass == 1.
    assert FEJER.mass == pytest.approx(2 * math.pi)


@pytest.mark.parametrize("x", [.5, 1., 3., 17.])
def test_jackson_and_fejer_formulas(x):
    assert JACKSON(x) == pytest.approx(96. * math.sin(x / 4.) ** 4 / (math.pi * x ** 4), rel=1e-12)
    assert FEJER(x) == pytest.approx((math.sin(x / 2.) / (x / 2.)) ** 2, rel=1e-12)


def test_jackson_ft_is_a_continuous_spline():
    t = np.linspace(0., 1., 2001)
    values = JACKSON.transform(t)
    assert values[0] == 1. and values[-1] == 0.
    assert np.max(np.abs(np.diff(values))) < 2e-3
    assert JACKSON.transform(.5) == pytest.approx(.25)


@pytest.mark.parametrize("kernel", [SHARP, JACKSON, FEJER])
def test_kernels_factor_into_numerator_and_tail(kernel):
    x = np.linspace(2 * math.pi + .1, 40., 50)
    assert np.allclose(kernel(x), kernel.numerator(x) * kernel.tail(x), rtol=1e-12, atol=0.)


@pytest.mark.parametrize("x", [.1, .7, 1.2, HALF_PI - 1e-3, 3.])
def test_kernel_derivatives_match_finite_differences(x):
    h = 1e-5
    assert eval_kernel_derivative(x) == pytest.approx((SHARP(x + h) - SHARP(x - h)) / (2 * h), abs=1e-9)
    h = 1e-4
    second = (SHARP(x + h) - 2 * SHARP(x) + SHARP(x - h)) / h ** 2
    assert eval_kernel_derivative2(x) == pytest.approx(second, abs=1e-6)


def test_kernel_is_decreasing_and_concave_on_half_window():
    x = np.linspace(1e-3, HALF_PI - 1e-3, 200)
    assert np.all(eval_kernel_derivative(x) < 0)
    assert np.all(eval_kernel_derivative2(x) < 0)
    assert eval_kernel_derivative(-.4) == pytest.approx(-eval_kernel_derivative(.4), abs=1e-15)


def test_extremum_location():
    assert extremum_location(1) == -HALF_PI
    assert extremum_location(2) == pytest.approx(math.pi * (-2. + math.sqrt(3.)) / 2., rel=1e-14)
    locations = [extremum_location(N) for N in range(2, 30)]
    assert all(-HALF_PI < e < 0 for e in locations)
    assert np.all(np.diff(locations) > 0)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
def test_extremum_location_matches_numeric_argextremum(N):
    assert abs(argextremum_ratio(N) - extremum_location(N)) <= 1e-6


@pytest.mark.parametrize("N", [0, -1, 2.5, "2"])
def test_extremum_needs_positive_integer(N):
    with pytest.raises(ValueError):
        extremum_location(N)


def test_eval_ratio_sign_and_domain():
    # K(x + N pi) changes sign with N while K > 0 on the window
    assert eval_ratio(2, 0.) < 0
    assert eval_ratio(3, 0.) > 0
    assert eval_ratio(2, .3) == pytest.approx(SHARP(.3 + 2 * math.pi) / SHARP(.3), rel=1e-14)
    with pytest.raises(ValueError):
        eval_ratio(2, HALF_PI)


def test_numerator_zeros_in():
    zeros = numerator_zeros_in(SHARP, 0., 4 * math.pi)
    assert zeros == pytest.approx([HALF_PI, 3 * HALF_PI, 5 * HALF_PI, 7 * HALF_PI])
    assert numerator_zeros_in(FEJER, -.1, .1) == [0.]


def test_jackson_constant():
    value = kernel_constant(JACKSON)
    assert abs(value - 12. * math.log(2.) / math.pi) <= 1e-6
    assert value < 6.


@pytest.mark.parametrize("kernel", [SHARP, FEJER])
def test_first_moment_diverges(kernel):
    assert kernel_constant(kernel) == DIVERGENT


def test_first_moment_periods_decay_for_jackson():
    c = first_moment_periods(JACKSON, 10)
    assert c.shape == (10,)
    assert np.all(np.arange(2, 11) * c[1:] < c[0])
    assert c[-1] < c[0] / 100.
