import argparse

import pytest

from tauberkit.config import DEFAULT_TOLERANCES, ConfigError, RunConfig, parse_tolerance


def test_defaults():
    config = RunConfig()
    assert config.grid == 201 and config.format == 'table'
    assert config.seed == 0 and config.n_jobs == 1 and config.progress
    for name, value in DEFAULT_TOLERANCES.items():
        assert config.tol(name) == value
    with pytest.raises(KeyError):
        config.tol('nope')


@pytest.mark.parametrize("d", [
    dict(colour='blue'),
    dict(tolerances=dict(nope=1.)),
    dict(tolerances=dict(claim=-1.)),
    dict(tolerances=dict(claim='loose')),
    dict(tolerances=dict(claim=True)),
    dict(tolerances=[1., 2.]),
    dict(grid=200),
    dict(grid=49),
    dict(format='xml'),
    dict(n_jobs=0),
])
def test_from_dict_rejects(d):
    with pytest.raises(ConfigError):
        RunConfig.from_dict(d)


def test_from_dict_reads_yaml_strings():
    # yaml.safe_load gives '1e-9' for 1e-9
    config = RunConfig.from_dict(dict(tolerances=dict(claim='1e-9')))
    assert config.tol('claim') == 1e-9
    assert RunConfig.from_dict(None) == RunConfig()


def test_from_yaml(tmp_path):
    path = tmp_path / 'run.yaml'
    path.write_text("grid: 101\nseed: 3\ntolerances:\n  osc_bound: 1e-6\n")
    config = RunConfig.from_yaml(str(path))
    assert (config.grid, config.seed) == (101, 3)
    assert config.tol('osc_bound') == 1e-6
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        RunConfig.from_yaml(str(path))
    path.write_text("")
    assert RunConfig.from_yaml(str(path)) == RunConfig()


def test_updated_merges_tolerances():
    config = RunConfig(tolerances=dict(claim=1e-6)).updated(tolerances=dict(osc_bound=1e-3), seed=5)
    assert config.tol('claim') == 1e-6 and config.tol('osc_bound') == 1e-3
    assert config.seed == 5


def test_from_args(tmp_path):
    path = tmp_path / 'run.yaml'
    path.write_text("seed: 3\nformat: json\n")
    args = argparse.Namespace(config=str(path), tol=['claim=1e-4'], grid=None, format='csv', seed=None,
                              jobs=2, no_progress=True)
    config = RunConfig.from_args(args)
    assert config.seed == 3
    assert config.format == 'csv'
    assert config.tol('claim') == 1e-4
    assert config.n_jobs == 2 and not config.progress


@pytest.mark.parametrize("item, expected", [
    ('claim=1e-4', ('claim', 1e-4)),
    (' osc_bound = 0.5', ('osc_bound', .5)),
])
def test_parse_tolerance(item, expected):
    assert parse_tolerance(item) == expected


@pytest.mark.parametrize("item", ['claim', '=1', 'claim=abc'])
def test_parse_tolerance_errors(item):
    with pytest.raises(ConfigError):
        parse_tolerance(item)
