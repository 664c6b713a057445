import dataclasses as dtc
from typing import Dict

import yaml

from .bounds.report import FORMATS

__all__ = [
    'DEFAULT_TOLERANCES',
    'ConfigError',
    'RunConfig',
    'parse_tolerance',
]

DEFAULT_TOLERANCES = dict(
    kernel_mass=1e-9,
    kernel_abs_balance=1e-8,
    kernel_peak=1e-12,
    alpha_balance=1e-8,
    kernel_concavity=0.,
    ratio_extremum=1e-6,
    single_crossing=1e-10,
    lp_sandwich=1e-6,
    lp_refinement=1e-4,
    claim=1e-8,
    transform_match=1e-10,
    transform_limit=1e-8,
    convolution_decay=1e-2,
    jackson_constant=1e-6,
    theta_floor=1e-12,
    theta_ends=1e-3,
    chain_limit=1e-3,
    fejer_mass=1e-8,
    osc_bound=1e-9,
    mollified_min=1e-3,
    mollified_primitive=5e-2,
)


class ConfigError(ValueError):
    pass


def parse_tolerance(item):
    """``'NAME=VALUE'`` -> ``(name, float(value))``"""
    name, sep, value = str(item).partition('=')
    if not sep or not name:
        raise ConfigError("Expected NAME=VALUE. Got %s" % str(item))
    try:
        return name.strip(), float(value)
    except ValueError:
        raise ConfigError("Expected a number for tolerance %s. Got %s" % (name, value))


@dtc.dataclass
class RunConfig:
    """
    settings of a verification run.

    ``tolerances`` overrides ``DEFAULT_TOLERANCES`` by name; ``grid`` is the LP grid size;
    ``seed`` fixes every randomised check.
    """
    tolerances: Dict[str, float] = dtc.field(default_factory=dict)
    grid: int = 201
    format: str = 'table'
    seed: int = 0
    n_jobs: int = 1
    progress: bool = True

    def __post_init__(self):
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError("Unknown tolerance name(s): %s. Expected one of %s"
                              % (", ".join(sorted(unknown)), ", ".join(DEFAULT_TOLERANCES)))
        tolerances = {}
        for name, value in self.tolerances.items():
            try:
                # yaml reads 1e-9 (no dot) as a string
                tolerances[name] = float(value) if not isinstance(value, bool) else -1.
            except (TypeError, ValueError):
                tolerances[name] = -1.
            if not tolerances[name] >= 0:
                raise ConfigError("Expected a non-negative tolerance for %s. Got %s" % (name, str(value)))
        self.tolerances = tolerances
        if int(self.grid) != self.grid or self.grid < 51 or self.grid % 2 == 0:
            raise ConfigError("Expected an odd grid size >= 51. Got %s" % str(self.grid))
        if self.format not in FORMATS:
            raise ConfigError("Expected format in %s. Got %s" % (str(FORMATS), str(self.format)))
        if int(self.n_jobs) != self.n_jobs or self.n_jobs < 1:
            raise ConfigError("Expected n_jobs >= 1. Got %s" % str(self.n_jobs))

    def tol(self, name):
        if name not in DEFAULT_TOLERANCES:
            raise KeyError(name)
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])

    def updated(self, **kwargs):
        tolerances = {**self.tolerances, **kwargs.pop('tolerances', {})}
        return dtc.replace(self, tolerances=tolerances, **kwargs)

    @staticmethod
    def from_dict(d):
        d = dict(d or {})
        fields = {f.name for f in dtc.fields(RunConfig)}
        unknown = set(d) - fields
        if unknown:
            raise ConfigError("Unknown config key(s): %s" % ", ".join(sorted(map(str, unknown))))
        if not isinstance(d.get('tolerances', {}), dict):
            raise ConfigError("Expected a mapping for 'tolerances'. Got %s" % str(d['tolerances']))
        return RunConfig(**d)

    @staticmethod
    def from_yaml(path):
        with open(path, 'r') as f:
            d = yaml.safe_load(f)
        if d is not None and not isinstance(d, dict):
            raise ConfigError("Expected a mapping at the top of %s" % str(path))
        return RunConfig.from_dict(d)

    @staticmethod
    def from_args(args):
        """defaults < ``args.config`` (YAML) < explicit flags of an ``argparse.Namespace``"""
        config = RunConfig.from_yaml(args.config) if getattr(args, 'config', None) else RunConfig()
        overrides = dict(parse_tolerance(t) for t in (getattr(args, 'tol', None) or []))
        changes = {}
        for name in ('grid', 'format', 'seed'):
            value = getattr(args, name, None)
            if value is not None:
                changes[name] = value
        if getattr(args, 'jobs', None) is not None:
            changes['n_jobs'] = args.jobs
        if getattr(args, 'no_progress', False):
            changes['progress'] = False
        return config.updated(tolerances=overrides, **changes)
