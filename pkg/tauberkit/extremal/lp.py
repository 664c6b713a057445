import dataclasses as dtc
import json
import warnings

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .window import check_condition, window_grid
from ..kernels import eval_kernel_derivative

__all__ = [
    'LP_OPTIONS',
    'LipschitzLP',
    'LPSolution',
    'solve_lipschitz_lp',
    'min_over_lipschitz',
    'inject_zigzag',
    'ClaimVerdict',
    'claim_infeasibility',
    'dump_lp_json',
    'load_lp_json',
]

LP_OPTIONS = dict(primal_feasibility_tolerance=1e-10, dual_feasibility_tolerance=1e-10)

_STATUS = {0: 'optimal', 2: 'infeasible', 3: 'unbounded'}


def _differences(n):
    """(n-1, n) sparse matrix of forward differences"""
    return sp.diags([-np.ones(n - 1), np.ones(n - 1)], [0, 1], shape=(n - 1, n), format='csr')


@dtc.dataclass(frozen=True, eq=False)
class LipschitzLP:
    """
    the discretised extremal problem on the window ``[-pi/2, pi/2]``:

    minimise ``sum objective_weights * f`` over grid functions with ``|f[i+1] - f[i]| <= h``,
    ``f[0] = s`` and ``sum constraint_weights * f <= I`` (even ``N``, ``sense='<='``) or
    ``>= I`` (odd ``N``, ``sense='>='``).
    """
    N: int
    s: float
    I: float
    n: int
    grid: np.ndarray
    objective_weights: np.ndarray
    constraint_weights: np.ndarray
    lipschitz_step: float
    sense: str

    @classmethod
    def build(cls, N, s, I, n=201):
        if int(N) != N or N < 1:
            raise ValueError("Expected a positive integer N. Got %s" % str(N))
        if n < 51 or n % 2 == 0:
            raise ValueError("Expected an odd grid size n >= 51. Got %s" % str(n))
        grid = window_grid(int(N), int(n))
        return cls(int(N), float(s), float(I), int(n), grid.x,
                   grid.weights * grid.translate, grid.weights * grid.kernel,
                   grid.step, '<=' if N % 2 == 0 else '>=')

    @property
    def sign(self):
        return 1. if self.sense == '<=' else -1.

    def residual(self, values):
        """largest violation of the constraints by ``values`` (0 when feasible)"""
        f = np.asarray(values, dtype=float)
        lipschitz = np.max(np.abs(np.diff(f))) - self.lipschitz_step
        budget = self.sign * (self.constraint_weights @ f - self.I)
        start = abs(f[0] - self.s)
        return float(max(lipschitz, budget, start, 0.))

    def to_dict(self):
        return dict(N=self.N, s=self.s, I=self.I, n=self.n, sense=self.sense,
                    lipschitz_step=self.lipschitz_step,
                    grid=self.grid.tolist(),
                    objective_weights=self.objective_weights.tolist(),
                    constraint_weights=self.constraint_weights.tolist())

    @staticmethod
    def from_dict(d):
        return LipschitzLP(int(d['N']), float(d['s']), float(d['I']), int(d['n']),
                           np.asarray(d['grid'], dtype=float),
                           np.asarray(d['objective_weights'], dtype=float),
                           np.asarray(d['constraint_weights'], dtype=float),
                           float(d['lipschitz_step']), d['sense'])


@dtc.dataclass(frozen=True, eq=False)
class LPSolution:
    values: np.ndarray
    objective: float
    status: str
    message: str = ''
    residual: float = 0.

    @property
    def optimal(self):
        return self.status == 'optimal'

    def to_dict(self):
        return dict(values=None if self.values is None else np.asarray(self.values).tolist(),
                    objective=self.objective, status=self.status,
                    message=self.message, residual=self.residual)

    @staticmethod
    def from_dict(d):
        values = d.get('values')
        return LPSolution(None if values is None else np.asarray(values, dtype=float),
                          float(d['objective']), d['status'], d.get('message', ''),
                          float(d.get('residual', 0.)))


def _solve(c, A_ub, b_ub, A_eq=None, b_eq=None, bounds=(None, None)):
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds,
                  method='highs', options=LP_OPTIONS)
    status = _STATUS.get(res.status, 'failed')
    if status == 'failed':
        warnings.warn("linprog: %s" % res.message)
    return res, status


def solve_lipschitz_lp(lp):
    """solve a ``LipschitzLP`` with HiGHS; solver failures come back in ``LPSolution.status``"""
    D = _differences(lp.n)
    A_ub = sp.vstack([D, -D, sp.csr_matrix(lp.sign * lp.constraint_weights[None, :])], format='csr')
    b_ub = np.concatenate([np.full(2 * (lp.n - 1), lp.lipschitz_step), [lp.sign * lp.I]])
    A_eq = sp.csr_matrix(([1.], ([0], [0])), shape=(1, lp.n))
    res, status = _solve(lp.objective_weights, A_ub, b_ub, A_eq, np.array([lp.s]))
    if status != 'optimal':
        return LPSolution(None, np.nan, status, res.message, np.nan)
    values = np.asarray(res.x, dtype=float)
    return LPSolution(values, float(lp.objective_weights @ values), status, res.message,
                      lp.residual(values))


def min_over_lipschitz(N, s, I, n=201):
    """
    build ``LipschitzLP.build(N, s, I, n)`` and solve it with HiGHS.

    Solver failures are reported in ``LPSolution.status`` (``optimal``, ``infeasible``,
    ``unbounded`` or ``failed``), never raised.

    Returns
    -------
    (solution, lp) : tuple of LPSolution and LipschitzLP
        the solution together with the problem it solves
    """
    lp = LipschitzLP.build(N, s, I, n)
    if not check_condition(s, I):
        warnings.warn("I=%r lies outside the attainable window for s=%r" % (I, s))
    return solve_lipschitz_lp(lp), lp


def inject_zigzag(lp, zigzag):
    """
    sample ``zigzag`` on the grid of ``lp``.

    Returns
    -------
    objective : float
    residuals : dict
        ``lipschitz`` (max step minus ``h``), ``budget`` (signed distance to ``I``) and
        ``start`` (``z(-pi/2) - s``, of the sign allowed by ``lp.sense``)
    """
    z = np.asarray(zigzag(lp.grid), dtype=float)
    residuals = dict(lipschitz=float(np.max(np.abs(np.diff(z))) - lp.lipschitz_step),
                     budget=float(lp.constraint_weights @ z - lp.I),
                     start=float(z[0] - lp.s))
    return float(lp.objective_weights @ z), residuals


@dtc.dataclass(frozen=True)
class ClaimVerdict:
    optimum: float
    status: str
    certified: bool
    balanced: bool

    def __bool__(self):
        return bool(self.certified)


def claim_infeasibility(n=201, enforce_balance=True, bound=10., tol=1e-8):
    """
    LP certificate that no ``rho`` on ``[-pi/2, pi/2]`` with ``rho(-pi/2) <= -1``,
    non-increasing on ``[-pi/2, 0]`` and non-decreasing on ``[0, pi/2]`` has both
    ``int K rho = 0`` and ``int K' rho > 0``.

    Maximises ``sum w K' rho`` over the grid functions with ``|rho| <= bound``. The
    certificate holds when the optimum is at most ``tol``. With ``enforce_balance=False`` the
    balance constraint is dropped and the optimum becomes positive.
    """
    if n < 101 or n % 2 == 0:
        raise ValueError("Expected an odd grid size n >= 101. Got %s" % str(n))
    grid = window_grid(1, int(n))
    mid = (n - 1) // 2
    dk = eval_kernel_derivative(grid.x)
    # rho[i+1] - rho[i] <= 0 left of 0, rho[i] - rho[i+1] <= 0 right of it
    signs = np.where(np.arange(n - 1) < mid, 1., -1.)
    A_ub = (sp.diags(signs) @ _differences(n)).tocsr()
    b_ub = np.zeros(n - 1)
    if enforce_balance:
        A_eq, b_eq = grid.weights[None, :] * grid.kernel[None, :], np.zeros(1)
    else:
        A_eq, b_eq = None, None
    bounds = [(-bound, -1.)] + [(-bound, bound)] * (n - 1)
    res, status = _solve(-(grid.weights * dk), A_ub, b_ub, A_eq, b_eq, bounds)
    optimum = -float(res.fun) if status == 'optimal' else np.nan
    return ClaimVerdict(optimum, status, bool(status == 'optimal' and optimum <= tol), bool(enforce_balance))


def dump_lp_json(lp, solution=None, path=None):
    """JSON text of an LP instance and, optionally, its solution; written to ``path`` if given"""
    payload = dict(lp=lp.to_dict())
    if solution is not None:
        payload['solution'] = solution.to_dict()
    text = json.dumps(payload, sort_keys=True, indent=1)
    if path is not None:
        with open(path, 'w') as f:
            f.write(text + '\n')
    return text


def load_lp_json(source):
    """
    read back ``dump_lp_json`` output from a path or a JSON string.

    Returns
    -------
    lp : LipschitzLP
    solution : LPSolution or None
    """
    text = source
    if not str(source).lstrip().startswith('{'):
        with open(source, 'r') as f:
            text = f.read()
    payload = json.loads(text)
    solution = payload.get('solution')
    return LipschitzLP.from_dict(payload['lp']), None if solution is None else LPSolution.from_dict(solution)
