import math

import numpy as np
import pytest
from scipy.special import sici, zeta

from tauberkit.quadrature import (DivergenceError, QuadratureError, QuadratureResult, RationalTail,
                                  TailIntegrand, check_identity, integrate, integrate_periodic_tail,
                                  simpson_weights)


@pytest.mark.parametrize("n", [3, 5, 51, 201])
def test_simpson_weights_integrate_cubics_exactly(n):
    x = np.linspace(-1., 2., n)
    w = simpson_weights(n, -1., 2.)
    assert w.sum() == pytest.approx(3., abs=1e-13)
    assert w @ x ** 3 == pytest.approx((16. - 1.) / 4., abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 4, 200])
def test_simpson_weights_need_odd_n(n):
    with pytest.raises(ValueError):
        simpson_weights(n, 0., 1.)


def test_integrate_smooth():
    res = integrate(math.sin, 0., math.pi)
    assert isinstance(res, QuadratureResult)
    assert res.value == pytest.approx(2., abs=1e-10)
    assert res.error_estimate <= 1e-10
    assert res.subdivisions > 0


@pytest.mark.parametrize("k", range(10))
def test_base_rule_is_exact_on_monomials(k):
    res = integrate(lambda x: x ** k, 0., 1.)
    assert res.value == pytest.approx(1. / (k + 1), abs=1e-14)
    assert res.subdivisions == 1


def test_error_estimate_bounds_the_error():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b, c = rng.normal(), rng.uniform(.5, 10.), rng.uniform(0., 2 * math.pi)
        p, q = rng.normal(), rng.choice([-1., 1.]) * rng.uniform(.2, 1.)
        r, m = rng.exponential(), rng.uniform(0., 3.)
        f = lambda x: a * math.sin(b * x + c) + p * math.exp(q * x) + r / (1. + (x - m) ** 2)
        exact = (-a / b * (math.cos(3. * b + c) - math.cos(c)) + p / q * math.expm1(3. * q)
                 + r * (math.atan(3. - m) + math.atan(m)))
        res = integrate(f, 0., 3., tol=1e-10)
        assert res.error_estimate <= 1e-10
        assert abs(res.value - exact) <= res.error_estimate + 1e-13


def test_integrate_splits_at_singular_points():
    # sin(x)/x is 0/0 at 0, which quad never evaluates once 0 is a cut
    res = integrate(lambda x: math.sin(x) / x, -1., 1., singular=(0.,), tol=1e-12)
    assert res.value == pytest.approx(1.8921661407343662, abs=1e-11)


def test_integrate_kinks():
    res = integrate(lambda x: abs(x - .3), 0., 1., points=(.3,), tol=1e-13)
    assert res.value == pytest.approx((.3 ** 2 + .7 ** 2) / 2., abs=1e-13)


@pytest.mark.parametrize("a, b", [(1., 1.), (2., 1.), (0., math.inf)])
def test_integrate_bad_bounds(a, b):
    with pytest.raises(ValueError):
        integrate(math.cos, a, b)


def test_integrate_reports_non_convergence():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: 1. / x, 0., 1., tol=1e-12, limit=5)
    assert isinstance(info.value.partial, QuadratureResult)


def test_quadrature_result_arithmetic():
    a, b = QuadratureResult(1., 1e-3, 3), QuadratureResult(2., 2e-3, 4)
    total = a + b
    assert total.value == 3. and total.subdivisions == 7
    assert total.error_estimate == pytest.approx(3e-3)
    assert (-a).value == -1. and (-a).error_estimate == 1e-3
    assert a.scaled(-2.).error_estimate == pytest.approx(2e-3)


def test_rational_tail_without_pole_is_hurwitz_zeta():
    w = RationalTail(1., 2)
    value, bound = w.shifted_sum(1., 1., 0)
    assert value == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert bound == 0.
    assert w.shifted_sum(.5, 2., 3)[0] == pytest.approx(2. ** -2 * zeta(2, 3.25), rel=1e-14)


@pytest.mark.parametrize("pole", [0., .5, math.pi / 2])
def test_rational_tail_shifted_sum_telescopes(pole):
    w = RationalTail(-.5, 2, pole)
    y, P, H = 2. * math.pi, 2. * math.pi, 10
    near, _ = w.shifted_sum(y, P, 0)
    far, bound = w.shifted_sum(y, P, H)
    direct = sum(float(w(y + k * P)) for k in range(H))
    assert near - far == pytest.approx(direct, abs=1e-14)
    assert bound < 1e-15


def test_rational_tail_divergent_profile():
    with pytest.raises(DivergenceError):
        RationalTail(1., 1).shifted_sum(1., 1., 0)
    assert RationalTail(2., 3).lowered(1).power == 2
    assert RationalTail(-2., 3).absolute().coef == 2.


def test_periodic_tail_against_known_integral():
    # int_0^inf sin^2 x / x^2 = pi / 2
    tail = TailIntegrand(lambda x: math.sin(x) ** 2, RationalTail(1., 2), math.pi)
    head = integrate(lambda x: (math.sin(x) / x) ** 2, 0., 2 * math.pi, singular=(0.,), tol=1e-12)
    rest = integrate_periodic_tail(tail, 2 * math.pi)
    assert head.value + rest.value == pytest.approx(math.pi / 2, abs=1e-9)


def test_periodic_tail_with_breaks():
    # |cos x| / x^2 has kinks at pi/2 + k pi
    tail = TailIntegrand(lambda x: abs(math.cos(x)), RationalTail(1., 2), math.pi, (math.pi / 2,))
    value = integrate_periodic_tail(tail, math.pi, tol=1e-10).value
    brute = sum(integrate(lambda x: abs(math.cos(x)) / x ** 2, k * math.pi, (k + 1) * math.pi,
                          points=((k + .5) * math.pi,), tol=1e-13).value for k in range(1, 4001))
    # brute force misses about int_{4001 pi}^inf (2/pi) / x^2
    assert value == pytest.approx(brute + 2. / (math.pi ** 2 * 4001), abs=5e-8)


@pytest.mark.parametrize("head", [1, 5, 16])
def test_periodic_tail_pairs_alternating_periods(head):
    # int_{2 pi}^inf cos x / x^2 = Si(2 pi) - pi/2 + 1/(2 pi)
    tail = TailIntegrand(math.cos, RationalTail(1., 2), 2 * math.pi)
    exact = sici(2 * math.pi)[0] - math.pi / 2 + 1. / (2 * math.pi)
    res = integrate_periodic_tail(tail, 2 * math.pi, tol=1e-10, head=head)
    assert res.value == pytest.approx(exact, abs=1e-9)


def test_periodic_tail_rejects_slow_decay():
    tail = TailIntegrand(lambda x: 1., RationalTail(1., 1), 1.)
    with pytest.raises(DivergenceError):
        integrate_periodic_tail(tail, 1.)


def test_periodic_tail_start_beyond_pole():
    tail = TailIntegrand(math.cos, RationalTail(-.5, 2, math.pi / 2), 2 * math.pi)
    with pytest.raises(ValueError):
        integrate_periodic_tail(tail, 1.)


def test_check_identity_uses_error_estimates():
    lhs = QuadratureResult(1., 1e-6)
    assert check_identity(lhs, 1. + 5e-7, tol=0.)
    verdict = check_identity(lhs, 1. + 1e-5, tol=0.)
    assert not verdict
    assert verdict.difference == pytest.approx(1e-5)
    assert verdict.allowance == pytest.approx(1e-6)
