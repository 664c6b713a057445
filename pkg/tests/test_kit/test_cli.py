import io
import json

import pandas as pd
import pytest

from tauberkit.cli import SWEEPS, constants_table, main, sweep_frame
from tauberkit.config import ConfigError
from tauberkit.extremal import load_lp_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_constants(capsys):
    code, out, _ = run(capsys, 'constants', '--no-progress')
    assert code == 0
    assert 'jackson_constant' in out
    code, out, _ = run(capsys, 'constants', '--format', 'json')
    assert code == 0
    records = json.loads(out)
    assert {r['name'] for r in records} >= {'two_sided_bound', 'one_sided_bound', 'fejer_window_mass'}
    assert all(r['passed'] for r in records)


def test_constants_table_passes():
    table = constants_table()
    assert table.all_passed, table.failures


def test_verify_exit_codes(capsys):
    code, _, err = run(capsys, 'verify', 'theta_sharpness', '--no-progress')
    assert code == 0
    assert err == ''
    code, _, err = run(capsys, 'verify', 'theta_sharpness', '--tol', 'theta_ends=0', '--no-progress')
    assert code == 1
    assert 'FAILED: theta_sharpness.small_theta' in err


def test_verify_everything_exits_0(capsys):
    code, out, err = run(capsys, 'verify', '--no-progress', '--jobs', '4', '--format', 'json')
    assert code == 0, err
    assert 'FAILED' not in err
    records = json.loads(out)
    assert all(r['passed'] for r in records)


def test_same_seed_gives_identical_output(capsys):
    argv = ['verify', 'extremal_transforms', 'kernel_concavity', '--seed', '3', '--format', 'csv',
            '--no-progress']
    first = run(capsys, *argv)
    second = run(capsys, *argv, '--jobs', '2')
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


@pytest.mark.parametrize("argv", [
    ['verify', 'theta_sharpness', '--tol', 'bogus=1'],
    ['verify', 'theta_sharpness', '--tol', 'theta_ends'],
    ['verify', 'no_such_check'],
    ['verify', 'theta_sharpness', '--grid', '200'],
    ['verify', 'theta_sharpness', '--config', '/nonexistent/tauberkit.yaml'],
])
def test_bad_arguments_exit_with_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith('error:')


def test_yaml_config(capsys, tmp_path):
    path = tmp_path / 'run.yaml'
    path.write_text("tolerances:\n  theta_ends: 0\nformat: csv\n")
    code, out, _ = run(capsys, 'verify', 'theta_sharpness', '--config', str(path), '--no-progress')
    assert code == 1
    assert out.splitlines()[0].startswith('name,computed')
    # explicit flags win over the file
    code, _, _ = run(capsys, 'verify', 'theta_sharpness', '--config', str(path),
                     '--tol', 'theta_ends=1e-3', '--no-progress')
    assert code == 0
    path.write_text("tolerances:\n  theta_ends: 0\ncolour: blue\n")
    code, _, err = run(capsys, 'verify', 'theta_sharpness', '--config', str(path))
    assert code == 2
    assert 'colour' in err


def test_sweep(capsys):
    code, out, _ = run(capsys, 'sweep', 'u', '1e-4', '10', '100', '--no-progress')
    assert code == 0
    frame = pd.read_csv(io.StringIO(out))
    assert list(frame.columns) == ['param', 'value']
    assert len(frame) == 100
    assert frame['value'].iloc[0] == pytest.approx(1., abs=1e-3)


def test_sweep_log_spacing():
    frame = sweep_frame('theta', 1e-3, 10., 5, log=True)
    assert frame['param'].tolist() == pytest.approx([1e-3, 1e-2, 1e-1, 1., 10.])
    assert frame['value'].iloc[0] == pytest.approx(SWEEPS['theta'](1e-3))


@pytest.mark.parametrize("args", [
    ('u', 1., 2., 0, False),
    ('u', 2., 1., 10, False),
    ('theta', 0., 1., 10, True),
    ('zeta', 0., 1., 10, False),
])
def test_sweep_rejects_bad_ranges(args):
    with pytest.raises(ConfigError):
        sweep_frame(*args)


@pytest.mark.parametrize("argv", [
    ['sweep', 'u', '1', '2', '0'],
    ['sweep', 'u', '2', '1', '10'],
    ['sweep', 'theta', '0', '1', '10', '--log'],
])
def test_sweep_exit_codes(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_lp(capsys, tmp_path):
    dump = tmp_path / 'lp.json'
    code, out, _ = run(capsys, 'lp', '2', '0', '0', '--grid', '101', '--dump', str(dump))
    assert code == 0
    result = json.loads(out)
    assert result['condition']['holds']
    assert result['gap'] >= -1e-6
    assert result['zigzag']['orientation'] == 'upper'
    assert result['lipschitz']['status'] == 'optimal'
    lp, solution = load_lp_json(str(dump))
    assert lp.n == 101
    assert solution.objective == pytest.approx(result['lipschitz']['objective'])


def test_lp_outside_the_window(capsys):
    code, out, err = run(capsys, 'lp', '2', '0', '5')
    assert code == 1
    assert not json.loads(out)['condition']['holds']
    assert 'outside the window' in err


@pytest.mark.parametrize("argv, expected", [
    ([], 2),
    (['--version'], 0),
    (['sweep', 'zeta', '0', '1', '10'], 2),
    (['lp', 'two', '0', '0'], 2),
])
def test_parser_exit_codes(capsys, argv, expected):
    assert run(capsys, *argv)[0] == expected
