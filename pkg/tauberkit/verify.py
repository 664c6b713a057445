"""
named numerical checks of the Tauberian constants and of the objects behind them.

Every check takes a ``RunConfig`` and returns a list of ``BoundReport``; ``run_checks`` runs a
selection and collects the rows in a ``BoundTable``.
"""
import math
import warnings

import numpy as np

from .bounds import (BoundReport, BoundTable, fejer_argument, fejer_window_closed_form, full_convolution,
                     ingham_refined_bound, line_integral, one_sided_bound, one_sided_chain, osc_bound,
                     osc_bound_integrand, theta_sharpness, two_sided_bound, windowed_convolution)
from .config import RunConfig
from .extremal import (check_condition, check_single_crossing, claim_infeasibility, inject_zigzag,
                       min_over_lipschitz, min_over_zigzag, random_crossing_instance,
                       window_mass, window_moment)
from .kernels import (HALF_PI, JACKSON, SHARP, argextremum_ratio, eval_kernel_derivative,
                      eval_kernel_derivative2, extremum_location, kernel_constant)
from .laplace import (BLOWUP, boundary_scan, closed_form_one_sided, closed_form_two_sided,
                      laplace_pwl_exact, mollified_transform, one_sided_transform, pwl_transform,
                      two_sided_transform)
from .pwl import (build_alpha, build_one_sided_extremal, build_two_sided_extremal, constant_pwl,
                  mollified_sequence, oscillation_modulus)
from .quadrature import TailIntegrand, integrate, integrate_periodic_tail
from .utils import parallel_map

__all__ = [
    'CHECKS',
    'register',
    'run_check',
    'run_checks',
]

CHECKS = {}


def register(name):
    """decorator adding a check to ``CHECKS`` under ``name``"""
    def decorator(fn):
        if name in CHECKS:
            raise ValueError("check %s is already registered" % name)
        CHECKS[name] = fn
        return fn
    return decorator


def run_check(name, config):
    """run one check; an exception becomes a failing row"""
    if name not in CHECKS:
        raise ValueError("Expected a check name in %s. Got %s" % (", ".join(sorted(CHECKS)), name))
    try:
        return list(CHECKS[name](config))
    except Exception as e:
        return [BoundReport(name, math.nan, 0., note="%s: %s" % (type(e).__name__, e))]


def run_checks(config=None, names=None):
    """
    run the checks ``names`` (all of them by default) in name order.

    Checks run concurrently with ``config.n_jobs`` threads; the rows keep the name order.

    Returns
    -------
    table : BoundTable
    """
    config = RunConfig() if config is None else config
    names = sorted(CHECKS) if names is None else sorted(names)
    for name in names:
        if name not in CHECKS:
            raise ValueError("Expected a check name in %s. Got %s" % (", ".join(sorted(CHECKS)), name))
    results = parallel_map(lambda name: run_check(name, config), names,
                           n_jobs=config.n_jobs, progress=config.progress, desc='verify')
    return BoundTable.from_reports([r for rows in results for r in rows])


@register('kernel_identities')
def _kernel_identities(config):
    one = constant_pwl(1.)
    mass = line_integral(one, SHARP).value
    absolute = line_integral(one, SHARP, absolute=True).value
    window = SHARP.window_integral(-HALF_PI, HALF_PI).value
    return [
        BoundReport('kernel_identities.mass', mass, 1., config.tol('kernel_mass'), 'TRIVIAL'),
        BoundReport('kernel_identities.abs_balance', 2. * window - absolute, 0.,
                    config.tol('kernel_abs_balance'), 'DERIVED'),
        BoundReport('kernel_identities.peak', SHARP(HALF_PI), 1. / (2. * math.pi),
                    config.tol('kernel_peak'), 'TRIVIAL'),
    ]


def _alpha_tail_consistency(head=16):
    """tail from 2 pi minus its first ``head`` periods against the tail from ``2 pi (1 + head)``"""
    alpha = build_alpha()
    P = 2. * math.pi
    tail = TailIntegrand(lambda x: float(alpha(x) * SHARP.numerator(x)), SHARP.tail, P,
                         (HALF_PI, math.pi, 3 * HALF_PI))
    near = integrate_periodic_tail(tail, P, tol=1e-11).value
    far = integrate_periodic_tail(tail, P * (1 + head), tol=1e-11).value
    periods = sum(integrate(tail, P * (1 + k), P * (2 + k), points=[P * (1 + k) + b for b in tail.breaks],
                            tol=1e-12).value for k in range(head))
    return near - periods - far


@register('alpha_balance')
def _alpha_balance(config):
    alpha = build_alpha()
    tol = config.tol('alpha_balance')
    total = line_integral(alpha, SHARP).value
    absolute = line_integral(alpha, SHARP, absolute=True).value
    window = windowed_convolution(alpha, SHARP)
    return [
        BoundReport('alpha_balance.integral', total, 0., tol, 'DERIVED'),
        BoundReport('alpha_balance.abs_balance', 2. * window - absolute, 0., tol, 'DERIVED'),
        BoundReport('alpha_balance.tail_consistency', _alpha_tail_consistency(), 0., 1e-9, 'DERIVED'),
    ]


@register('kernel_concavity')
def _kernel_concavity(config):
    x = np.linspace(1e-3, HALF_PI - 1e-3, 200)
    tol = config.tol('kernel_concavity')
    return [
        BoundReport('kernel_concavity.first_derivative', float(np.max(eval_kernel_derivative(x))), 0., tol,
                    'DERIVED', kind='upper', note='max K\' on (0, pi/2)'),
        BoundReport('kernel_concavity.second_derivative', float(np.max(eval_kernel_derivative2(x))), 0., tol,
                    'DERIVED', kind='upper', note='max K\'\' on (0, pi/2)'),
    ]


@register('ratio_extremum')
def _ratio_extremum(config):
    return [BoundReport('ratio_extremum.N%i' % N, argextremum_ratio(N), extremum_location(N),
                        config.tol('ratio_extremum'), 'DERIVED')
            for N in range(2, 7)]


@register('single_crossing')
def _single_crossing(config, trials=1000, mirrored_every=5):
    rng = np.random.default_rng(config.seed)
    violations, broken = 0, 0
    for i in range(trials):
        inst = random_crossing_instance(rng, mirrored=(i % mirrored_every == mirrored_every - 1))
        verdict = check_single_crossing(inst.f, inst.g, inst.phi, inst.a, inst.b, weight=inst.weight,
                                        tol=config.tol('single_crossing'), points=inst.points)
        if not verdict.precondition:
            broken += 1
        elif not verdict.holds:
            violations += 1
    return [
        BoundReport('single_crossing.violations', violations, 0, 0., 'DERIVED',
                    note='%i seeded instances' % trials),
        BoundReport('single_crossing.preconditions', trials - broken, trials, 0., 'TRIVIAL'),
    ]


def _sandwich_instances(seed, count=20):
    rng = np.random.default_rng(seed)
    C, M1 = window_mass(), window_moment()
    out = []
    for i in range(count):
        s = float(rng.uniform(-1., 1.))
        u = float(rng.uniform(-.8, .8))
        out.append((2 + i % 3, s, s * C + u * M1))
    return out


def _sandwich_one(instance, n):
    N, s, I = instance
    zz = min_over_zigzag(N, s, I, n=n)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        sol, lp = min_over_lipschitz(N, s, I, n=n)
    injected, residuals = inject_zigzag(lp, zz.zigzag) if zz.feasible else (math.nan, {})
    return sol.objective, zz.value, injected, residuals


@register('zigzag_sandwich')
def _zigzag_sandwich(config):
    n = config.grid
    instances = [x for x in _sandwich_instances(config.seed) if check_condition(x[1], x[2])]
    coarse = [_sandwich_one(x, n) for x in instances]
    fine = [_sandwich_one(x, 2 * n - 1) for x in instances]
    gap = lambda rows: float(np.min([lp - zz for lp, zz, _, _ in rows]))
    tol = config.tol('lp_sandwich')
    injection = float(np.max([abs(inj - zz) for _, zz, inj, _ in coarse]))
    lipschitz = float(np.max([res.get('lipschitz', math.inf) for _, _, _, res in coarse]))
    return [
        BoundReport('zigzag_sandwich.gap_n%i' % n, gap(coarse), 0., tol, 'DERIVED', kind='lower',
                    note='%i instances' % len(instances)),
        BoundReport('zigzag_sandwich.gap_n%i' % (2 * n - 1), gap(fine), 0., tol, 'DERIVED', kind='lower'),
        BoundReport('zigzag_sandwich.refinement',
                    float(np.max([abs(f[0] - c[0]) for c, f in zip(coarse, fine)])), 0.,
                    config.tol('lp_refinement'), 'DERIVED'),
        BoundReport('zigzag_sandwich.injected_objective', injection, 0., 1e-8, 'DERIVED'),
        BoundReport('zigzag_sandwich.injected_lipschitz', lipschitz, 0., 1e-12, 'TRIVIAL', kind='upper'),
    ]


@register('claim_infeasibility')
def _claim_infeasibility(config):
    tol = config.tol('claim')
    balanced = claim_infeasibility(n=config.grid, tol=tol)
    free = claim_infeasibility(n=config.grid, enforce_balance=False, tol=tol)
    return [
        BoundReport('claim_infeasibility.optimum', balanced.optimum, 0., tol, 'DERIVED', kind='upper',
                    note=balanced.status),
        BoundReport('claim_infeasibility.unbalanced', free.optimum, 2. * tol, 0., 'DERIVED', kind='lower',
                    note='optimum without the balance constraint'),
    ]


def _richardson_at_zero(f, s=4e-3):
    """limit at 0 of an even transform from its values at ``s`` and ``s/2``"""
    return ((4. * laplace_pwl_exact(f, s / 2.) - laplace_pwl_exact(f, s)) / 3.).real


@register('extremal_transforms')
def _extremal_transforms(config, count=20):
    rng = np.random.default_rng(config.seed)
    s = rng.uniform(1e-3, 2., count) + 1j * rng.uniform(-4., 4., count)
    tol = config.tol('transform_match')
    rows = []
    cases = [
        ('two_sided', build_two_sided_extremal(), closed_form_two_sided, two_sided_transform(), .99),
        ('one_sided', build_one_sided_extremal(), closed_form_one_sided, one_sided_transform(), .99 * math.pi),
    ]
    for name, f, closed, F, edge in cases:
        mismatch = max(abs(laplace_pwl_exact(f, z) - closed(z)) / (1. + abs(closed(z))) for z in s)
        scan = boundary_scan(F, np.linspace(-edge, edge, 397))
        exact = boundary_scan(pwl_transform(f), np.linspace(-edge, edge, 397))
        rows += [
            BoundReport('extremal_transforms.%s_match' % name, mismatch, 0., tol, 'DERIVED'),
            BoundReport('extremal_transforms.%s_boundary' % name, scan.max_abs, BLOWUP, 0., 'DERIVED',
                        kind='upper', note='max |F(it)| on the regular segment'),
            BoundReport('extremal_transforms.%s_exact_boundary' % name, float(exact.blew_up), 0., 0., 'DERIVED',
                        note='piecewise-linear transform, s = 0 included'),
            BoundReport('extremal_transforms.%s_limit' % name, _richardson_at_zero(f), F.constant,
                        config.tol('transform_limit'), 'PAPER'),
        ]
    return rows


@register('convolution_decay')
def _convolution_decay(config):
    tau = build_two_sided_extremal()
    h = (25., 50., 100., 200.)
    values = [abs(full_convolution(tau, SHARP, x)) for x in h]
    increases = int(np.sum(np.diff(values) >= 0))
    return [
        BoundReport('convolution_decay.increases', increases, 0, 0., 'DERIVED',
                    note=' '.join('%.3e' % v for v in values)),
        BoundReport('convolution_decay.h200', values[-1], config.tol('convolution_decay'), 0., 'DERIVED',
                    kind='upper'),
    ]


@register('constants_table')
def _constants_table(config):
    jackson = kernel_constant(JACKSON)
    return [
        BoundReport('constants_table.jackson', jackson, 12. * math.log(2.) / math.pi,
                    config.tol('jackson_constant'), 'PAPER'),
        BoundReport('constants_table.jackson_below_ingham', jackson, 6., 0., 'PAPER', kind='upper'),
        BoundReport('constants_table.two_sided', two_sided_bound(1., 1.), math.pi / 2., 0., 'PAPER'),
        BoundReport('constants_table.two_sided_witness', build_two_sided_extremal().tail_sup,
                    two_sided_bound(1., 1.), 0., 'PAPER'),
        BoundReport('constants_table.one_sided', one_sided_bound(math.pi, 1.), 1., 0., 'PAPER'),
        BoundReport('constants_table.one_sided_witness', build_one_sided_extremal().tail_sup,
                    one_sided_bound(math.pi, 1.), 0., 'PAPER'),
    ]


@register('theta_sharpness')
def _theta_sharpness(config):
    theta = np.logspace(-3., math.log10(50.), 400)
    Theta = theta_sharpness(theta)
    combined = [ingham_refined_bound(t, 1., T) for t, T in zip(theta, Theta)]
    ends = config.tol('theta_ends')
    return [
        BoundReport('theta_sharpness.floor', min(combined), math.pi / 2., config.tol('theta_floor'),
                    'PAPER', kind='lower'),
        BoundReport('theta_sharpness.small_theta', Theta[0], math.pi / 2., ends, 'DERIVED',
                    note='Theta at theta=1e-3'),
        BoundReport('theta_sharpness.large_theta', HALF_PI * theta[-1] * Theta[-1], math.pi / 2., ends,
                    'DERIVED', note='(pi/2) theta Theta at theta=50'),
    ]


@register('one_sided_chain')
def _one_sided_chain(config):
    u = np.linspace(.05, 10., 200)
    return [
        BoundReport('one_sided_chain.limit', one_sided_chain(1e-4), 1., config.tol('chain_limit'), 'DERIVED'),
        BoundReport('one_sided_chain.monotone', float(np.min(np.diff(one_sided_chain(u)))), 0., 0.,
                    'DERIVED', kind='lower'),
    ]


@register('fejer_remark')
def _fejer_remark(config):
    report = fejer_argument(4.2, 1e-3)
    mass, moment = fejer_window_closed_form()
    tol = config.tol('fejer_mass')
    return [
        BoundReport('fejer_remark.window_mass', report.doubled_mass, 2. * mass, tol, 'DERIVED',
                    note='against Si'),
        BoundReport('fejer_remark.weighted_mass', report.weighted_mass, 8.2 * mass - moment, tol, 'DERIVED',
                    note='against Si and Ci'),
        BoundReport('fejer_remark.window_margin', report.doubled_mass, 9., 0., 'PAPER', kind='lower'),
        BoundReport('fejer_remark.weighted_margin', report.weighted_mass, report.reference, 0., 'PAPER',
                    kind='lower', note='4.1 int phi'),
        BoundReport('fejer_remark.total_mass', report.total_mass, 2. * math.pi, tol, 'TRIVIAL'),
        BoundReport('fejer_remark.inequalities', float(report.holds), 1., 0., 'PAPER',
                    note='S=4.2, epsilon=0.001'),
    ]


@register('oscillation_bound')
def _oscillation_bound(config):
    tau = build_two_sided_extremal()
    psi = lambda d: oscillation_modulus(tau, d)
    tol = config.tol('osc_bound')
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        inf = osc_bound(psi, 1.)
    return [
        BoundReport('oscillation_bound.delta_1e-3', osc_bound_integrand(psi, 1., 1e-3), math.pi / 2. + 1e-3,
                    tol, 'PAPER'),
        BoundReport('oscillation_bound.infimum', inf.value, math.pi / 2., tol, 'PAPER', kind='lower',
                    note='delta=%.1e' % inf.delta),
    ]


def _away_from_odd(length=20., count=50, distance=.2):
    x = np.linspace(.1, length - .1, 20 * count)
    x = x[np.abs(np.mod(x, 2.) - 1.) >= distance]
    return x[np.linspace(0, x.size - 1, count).astype(int)]


@register('mollified_example')
def _mollified_example(config, n=64):
    rho = mollified_sequence(n)
    tau = build_one_sided_extremal()
    x = _away_from_odd()
    primitive = rho.cumulative()
    error = float(np.max(np.abs(primitive(x) - tau(x))))
    return [
        BoundReport('mollified_example.minimum', rho.minimum, -1., config.tol('mollified_min'), 'PAPER'),
        BoundReport('mollified_example.transform_at_0', abs(mollified_transform(n)(0j)), 0., 0., 'TRIVIAL'),
        BoundReport('mollified_example.primitive', error, config.tol('mollified_primitive'), 0., 'DERIVED',
                    kind='upper', note='%i points away from the jumps' % x.size),
    ]

