import math

import numpy as np
import pytest

from tauberkit.laplace import (BoundaryScan, SingularPointError, boundary_scan, bump_transform, closed_form_mollified,
                               closed_form_one_sided, closed_form_two_sided, laplace_partial, laplace_pwl_exact,
                               laplace_window_average, mollified_transform, one_sided_transform,
                               partial_fourier_sup, pwl_transform, two_sided_transform)
from tauberkit.pwl import (PiecewiseLinear, build_one_sided_extremal, build_two_sided_extremal, constant_pwl,
                           window_average)
from tauberkit.quadrature import integrate


@pytest.fixture
def tau():
    return build_two_sided_extremal()


@pytest.fixture
def sawtooth():
    return build_one_sided_extremal()


@pytest.fixture
def seeded_s():
    rng = np.random.default_rng(0)
    return rng.uniform(1e-3, 2., 20) + 1j * rng.uniform(-4., 4., 20)


def test_two_sided_transform_matches_closed_form(tau, seeded_s):
    for s in seeded_s:
        value = closed_form_two_sided(s)
        assert abs(laplace_pwl_exact(tau, s) - value) <= 1e-10 * (1. + abs(value))


def test_one_sided_transform_matches_closed_form(sawtooth, seeded_s):
    for s in seeded_s:
        value = closed_form_one_sided(s)
        assert abs(laplace_pwl_exact(sawtooth, s) - value) <= 1e-10 * (1. + abs(value))


@pytest.mark.parametrize("s", [.7, 2. + 1j, .5 - 3j])
def test_exact_transform_against_quadrature(tau, s):
    # the weight is below e^{-60} beyond x_max
    s = complex(s)
    x_max = 60. / s.real
    points = tau.breakpoints_in(0., x_max)
    re = integrate(lambda x: tau(x) * (np.exp(-s * x)).real, 0., x_max, points=points, tol=1e-12).value
    im = integrate(lambda x: tau(x) * (np.exp(-s * x)).imag, 0., x_max, points=points, tol=1e-12).value
    assert laplace_pwl_exact(tau, s) == pytest.approx(complex(re, im), abs=1e-10)


def test_constant_tail_transform():
    assert laplace_pwl_exact(constant_pwl(1.), 2.) == pytest.approx(.5)
    f = PiecewiseLinear([0., 1.], [0., 1.])
    # int_0^1 x e^{-x} + int_1^inf e^{-x}
    assert laplace_pwl_exact(f, 1.) == pytest.approx(1. - math.exp(-1.), rel=1e-14)
    with pytest.raises(SingularPointError) as info:
        laplace_pwl_exact(constant_pwl(1.), 0.)
    assert info.value.singular_points == (0.,)


def test_transform_singular_points(tau):
    with pytest.raises(SingularPointError):
        laplace_pwl_exact(tau, 1j)
    with pytest.raises(SingularPointError):
        closed_form_two_sided(1j)
    with pytest.raises(SingularPointError):
        closed_form_one_sided(1j * math.pi)
    with pytest.raises(ValueError):
        laplace_pwl_exact(tau, -1.)


def test_continued_transform_on_the_imaginary_axis(tau):
    for t in (.3, -.7, .95):
        assert laplace_pwl_exact(tau, 1j * t) == pytest.approx(closed_form_two_sided(1j * t), abs=1e-10)


def test_closed_forms_at_zero():
    assert closed_form_two_sided(1e-6) == pytest.approx(math.pi ** 2 / 8, abs=1e-10)
    assert closed_form_one_sided(1e-6) == pytest.approx(-1. / 6, abs=1e-10)
    assert closed_form_two_sided(0.) == pytest.approx(math.pi ** 2 / 8, abs=1e-15)
    assert closed_form_one_sided(0.) == pytest.approx(-1. / 6, abs=1e-15)


@pytest.mark.parametrize("closed", [closed_form_two_sided, closed_form_one_sided])
@pytest.mark.parametrize("direction", [1., 1j, -1j, (1. + 1j) / math.sqrt(2.)])
def test_series_joins_the_closed_form(closed, direction):
    inside, outside = .9999e-3 * direction, 1.0001e-3 * direction
    assert closed(inside) == pytest.approx(closed(outside), abs=1e-8)


def test_transform_limits_at_zero(tau, sawtooth):
    # even in s: (4 F(s/2) - F(s)) / 3 cancels the s^2 term
    s = 4e-3
    limit = lambda f: ((4. * laplace_pwl_exact(f, s / 2.) - laplace_pwl_exact(f, s)) / 3.).real
    assert abs(limit(tau) - math.pi ** 2 / 8) <= 1e-7
    assert abs(limit(sawtooth) + 1. / 6) <= 1e-7


def test_closed_form_factories():
    F = two_sided_transform()
    assert F.constant == pytest.approx(math.pi ** 2 / 8)
    assert F.regular_segment == (-1., 1.)
    assert F.at_boundary(.5) == pytest.approx(closed_form_two_sided(.5j))
    G = one_sided_transform()
    assert G.constant == pytest.approx(-1. / 6)
    assert math.pi in G.singular_points
    P = pwl_transform(build_two_sided_extremal())
    assert P.regular_segment == (-1., 1.)
    assert P(1. + 1j) == pytest.approx(closed_form_two_sided(1. + 1j))


@pytest.mark.parametrize("which, constant", [('tau', math.pi ** 2 / 8), ('sawtooth', -1. / 6)])
def test_pwl_transform_is_finite_on_its_regular_segment(which, constant, tau, sawtooth):
    f = tau if which == 'tau' else sawtooth
    P = pwl_transform(f)
    lo, hi = P.regular_segment
    assert 0. not in P.singular_points
    report = boundary_scan(P, np.linspace(.99 * lo, .99 * hi, 397))
    assert not report.blew_up
    assert report.singular_hits == ()
    # s = 0 is removable and takes the limit
    assert P(0.) == pytest.approx(constant, abs=1e-12)
    assert P(1e-5j) == pytest.approx(constant, abs=1e-7)


def test_pwl_transform_with_a_non_zero_mean():
    f = PiecewiseLinear([0., 1., 2.], [1., 2., 1.], period=2.)
    P = pwl_transform(f)
    assert 0. in P.singular_points
    assert P.regular_segment == (0., 0.)
    with pytest.raises(SingularPointError):
        P(0.)
    with pytest.raises(SingularPointError):
        P(math.pi * 1j)
    # no second harmonic: 2 pi i is removable
    assert P(2 * math.pi * 1j) == pytest.approx(P(2 * math.pi * 1j + 1e-6), abs=1e-4)


@pytest.mark.parametrize("F, edge", [
    (two_sided_transform(), .99),
    (one_sided_transform(), .99 * math.pi),
])
def test_boundary_scan_is_finite_on_the_regular_segment(F, edge):
    report = boundary_scan(F, np.linspace(-edge, edge, 397))
    assert isinstance(report, BoundaryScan)
    assert not report.blew_up
    assert np.isfinite(report.max_abs)
    assert report.singular_hits == ()


def test_boundary_scan_flags_singular_points():
    report = boundary_scan(two_sided_transform(), [0., .5, 1., 1.5])
    assert report.blew_up
    assert report.singular_hits == (1.,)
    assert np.isnan(report.values[2])


def test_boundary_scan_csv():
    report = boundary_scan(two_sided_transform(), np.linspace(-.5, .5, 5))
    text = report.to_csv()
    lines = text.splitlines()
    assert lines[0] == "t,re,im,abs"
    assert len(lines) == 6
    assert "\r" not in text
    frame = report.to_frame()
    assert np.allclose(frame['abs'], np.abs(report.values))


def test_mollified_transform():
    assert closed_form_mollified(64, 0.) == 0j
    assert bump_transform(0.) == pytest.approx(1., abs=1e-12)
    report = boundary_scan(mollified_transform(8), np.linspace(-3., 3., 41))
    assert not report.blew_up
    with pytest.raises(ValueError):
        closed_form_mollified(8, math.pi)
    with pytest.raises(ValueError):
        closed_form_mollified(0, .5)


def test_mollified_transform_tends_to_the_sawtooth():
    # psi_hat(t/n) -> 1, so n -> inf recovers it * L{sawtooth}(it)
    t = 1.3
    target = 1j * t * closed_form_one_sided(1j * t)
    assert abs(closed_form_mollified(10 ** 6, t) - target) < 1e-5
    assert abs(closed_form_mollified(2, t) - target) > 1e-3


@pytest.mark.parametrize("delta", [.3, 1., 2.5])
def test_window_average_transform(tau, delta):
    s = 2.
    avg = window_average(tau, delta)
    knots = tau.breakpoints_in(0., 30. + delta)
    points = np.unique(np.r_[knots, knots - delta])
    points = points[(points > 0.) & (points < 30.)]
    # the tail beyond 30 is below e^-60
    direct = integrate(lambda x: avg(x) * math.exp(-s * x), 0., 30., points=points, tol=1e-10)
    value = laplace_window_average(tau, delta, s)
    assert abs(value.real - direct.value) <= direct.error_estimate + 1e-10
    assert abs(value.imag) < 1e-12


def test_window_average_transform_needs_a_function_on_the_half_line():
    with pytest.raises(ValueError):
        laplace_window_average(constant_pwl(1.), 1., 1.)
    with pytest.raises(ValueError):
        laplace_window_average(build_two_sided_extremal(), 0., 1.)


def test_partial_transforms(tau):
    s = .3j
    points = tau.breakpoints_in(0., 5.)
    re = integrate(lambda u: tau(u) * math.cos(.3 * u), 0., 5., points=points, tol=1e-13).value
    im = integrate(lambda u: -tau(u) * math.sin(.3 * u), 0., 5., points=points, tol=1e-13).value
    assert laplace_partial(tau, s, 5.) == pytest.approx(complex(re, im), abs=1e-12)
    assert laplace_partial(tau, s, -1.) == 0j
    # the small-argument series branch
    assert laplace_partial(tau, 1e-3, 1.) == pytest.approx(
        integrate(lambda u: u * math.exp(-1e-3 * u), 0., 1., tol=1e-14).value, abs=1e-14)
    sup = partial_fourier_sup(tau, .5, 20.)
    assert sup >= abs(laplace_partial(tau, .5j, 20.)) - 1e-12
    assert np.isfinite(sup)
