import argparse
import json
import math
import sys

import numpy as np
import pandas as pd

from . import __version__
from .bounds import (BoundReport, BoundTable, classical_constants, fejer_argument, fejer_window_closed_form,
                     full_convolution, graham_vaaler_window, one_sided_bound, one_sided_chain, osc_bound_integrand,
                     theta_sharpness, two_sided_bound)
from .config import ConfigError, RunConfig
from .extremal import check_condition, dump_lp_json, min_over_lipschitz, min_over_zigzag
from .kernels import JACKSON, SHARP, kernel_constant
from .pwl import build_two_sided_extremal, oscillation_modulus
from .utils import eprint, parallel_map
from .verify import run_checks

__all__ = [
    'SWEEPS',
    'build_parser',
    'cmd_verify',
    'constants_table',
    'cmd_constants',
    'sweep_frame',
    'cmd_sweep',
    'cmd_lp',
    'main',
]


def _sweep_delta(delta):
    tau = build_two_sided_extremal()
    return osc_bound_integrand(lambda d: oscillation_modulus(tau, d), 1., delta, True)


def _sweep_h(h):
    return full_convolution(build_two_sided_extremal(), SHARP, float(h))


SWEEPS = dict(
    theta=theta_sharpness,
    u=one_sided_chain,
    delta=_sweep_delta,
    h=_sweep_h,
)


def _emit(table, config):
    print(table.render(config.format))


def cmd_verify(config, names=None):
    table = run_checks(config, names)
    _emit(table, config)
    if not table.all_passed:
        for name in table.failures['name']:
            eprint("FAILED: %s" % name)
        return 1
    return 0


def constants_table():
    """the headline constants with their provenance"""
    fejer = fejer_argument()
    mass, moment = fejer_window_closed_form()
    classic = classical_constants()
    lower, upper = graham_vaaler_window(.5, 1., 1.)
    return BoundTable.from_reports([
        BoundReport('two_sided_bound', two_sided_bound(1., 1.), math.pi / 2., 0., 'PAPER'),
        BoundReport('one_sided_bound', one_sided_bound(1., 1.), math.pi, 0., 'PAPER'),
        BoundReport('jackson_constant', kernel_constant(JACKSON), 12. * math.log(2.) / math.pi, 1e-6, 'PAPER'),
        BoundReport('sharp_kernel_constant', kernel_constant(SHARP), math.inf, 0., 'DERIVED',
                    note='int |x K(x)| dx diverges'),
        BoundReport('ingham_two_sided', classic['ingham_two_sided'], 6., 0., 'PAPER'),
        BoundReport('contour_integration', classic['contour'], 2., 0., 'PAPER'),
        BoundReport('ingham_one_sided', classic['ingham_one_sided'], 182.91, .01, 'DERIVED'),
        BoundReport('fejer_window_mass', fejer.doubled_mass, 2. * mass, 1e-8, 'DERIVED', note='against Si'),
        BoundReport('fejer_weighted_mass', fejer.weighted_mass, 8.2 * mass - moment, 1e-8, 'DERIVED',
                    note='against Si and Ci'),
        BoundReport('fejer_weighted_margin', fejer.weighted_mass, fejer.reference, 0., 'PAPER', kind='lower',
                    note='4.1 int phi'),
        BoundReport('theta_small', theta_sharpness(1e-3), math.pi / 2., 1e-3, 'DERIVED', note='theta=1e-3'),
        BoundReport('theta_large', 50. * theta_sharpness(50.), 1., 1e-3, 'DERIVED', note='theta * Theta at 50'),
        BoundReport('graham_vaaler_ratio', upper / lower, math.exp(math.pi), 1e-12, 'TRIVIAL',
                    note='theta=0.5, lambda=1, M=1: [%.6f, %.6f]' % (lower, upper)),
    ])


def cmd_constants(config):
    table = constants_table()
    _emit(table, config)
    return 0 if table.all_passed else 1


def sweep_frame(what, lo, hi, steps, log=False, n_jobs=1, progress=False):
    """``param,value`` rows of one of ``SWEEPS`` over ``steps`` points of ``[lo, hi]``"""
    if what not in SWEEPS:
        raise ConfigError("Expected a sweep in %s. Got %s" % (", ".join(SWEEPS), what))
    if not steps or steps <= 0:
        raise ConfigError("Expected a positive number of steps. Got %s" % str(steps))
    if not lo < hi:
        raise ConfigError("Expected lo < hi. Got [%s, %s]" % (str(lo), str(hi)))
    if log and lo <= 0:
        raise ConfigError("Expected lo > 0 for a log sweep. Got %s" % str(lo))
    param = np.geomspace(lo, hi, steps) if log else np.linspace(lo, hi, steps)
    values = parallel_map(lambda p: float(SWEEPS[what](p)), param, n_jobs=n_jobs, progress=progress,
                          desc=what)
    return pd.DataFrame({'param': param, 'value': values})


def cmd_sweep(config, what, lo, hi, steps, log=False):
    frame = sweep_frame(what, lo, hi, steps, log, config.n_jobs, config.progress)
    sys.stdout.write(frame.to_csv(index=False, lineterminator='\n', float_format='%.15g'))
    return 0


def cmd_lp(config, N, s, I, n=None, dump=None):
    n = config.grid if n is None else n
    verdict = check_condition(s, I)
    out = dict(N=N, s=s, I=I, n=n,
               condition=dict(holds=verdict.holds, lower=verdict.lower, upper=verdict.upper))
    if not verdict:
        eprint("I=%r is outside the window [%r, %r] for s=%r" % (I, verdict.lower, verdict.upper, s))
        print(json.dumps(out, sort_keys=True, indent=1))
        return 1
    solution, lp = min_over_lipschitz(N, s, I, n)
    zz = min_over_zigzag(N, s, I, n)
    out['lipschitz'] = dict(objective=solution.objective, status=solution.status, residual=solution.residual)
    out['zigzag'] = dict(objective=zz.value,
                         c=None if zz.zigzag is None else zz.zigzag.c,
                         peak=None if zz.zigzag is None else zz.zigzag.peak,
                         orientation=None if zz.zigzag is None else zz.zigzag.orientation)
    out['gap'] = solution.objective - zz.value
    if dump is not None:
        dump_lp_json(lp, solution, dump)
    print(json.dumps(out, sort_keys=True, indent=1))
    return 0 if solution.optimal else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', action='append', metavar='NAME=VALUE', help='override a tolerance')
    common.add_argument('--grid', type=int, help='LP grid size (odd)')
    common.add_argument('--format', choices=['table', 'json', 'csv'], help='report format')
    common.add_argument('--seed', type=int, help='seed of the randomised checks')
    common.add_argument('--config', metavar='PATH', help='YAML file with RunConfig fields')
    common.add_argument('--jobs', type=int, help='number of worker threads')
    common.add_argument('--no-progress', action='store_true', help='hide progress bars')

    parser = argparse.ArgumentParser(prog='tauberkit', description='numerical checks of Tauberian constants')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command')

    verify = sub.add_parser('verify', parents=[common], help='run the verification checks')
    verify.add_argument('checks', nargs='*', help='check names (all by default)')

    sub.add_parser('constants', parents=[common], help='print the headline constants')

    sweep = sub.add_parser('sweep', parents=[common], help='tabulate a bound over a range')
    sweep.add_argument('what', choices=sorted(SWEEPS))
    sweep.add_argument('lo', type=float)
    sweep.add_argument('hi', type=float)
    sweep.add_argument('steps', type=int)
    sweep.add_argument('--log', action='store_true', help='geometric spacing')

    lp = sub.add_parser('lp', parents=[common], help='solve one discretised extremal problem')
    lp.add_argument('N', type=int)
    lp.add_argument('s', type=float)
    lp.add_argument('I', type=float)
    lp.add_argument('--n', type=int, default=None, help='grid size (defaults to --grid)')
    lp.add_argument('--dump', metavar='PATH', help='write the LP instance and solution as JSON')
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        config = RunConfig.from_args(args)
        if args.command == 'verify':
            return cmd_verify(config, args.checks or None)
        if args.command == 'constants':
            return cmd_constants(config)
        if args.command == 'sweep':
            return cmd_sweep(config, args.what, args.lo, args.hi, args.steps, args.log)
        return cmd_lp(config, args.N, args.s, args.I, args.n, args.dump)
    except (ValueError, OSError) as e:
        # ConfigError and invalid arguments of the numerical routines
        eprint("error: %s" % e)
        return 2


if __name__ == '__main__':
    sys.exit(main())
