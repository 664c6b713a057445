import math

import pandas as pd
import pytest

from tauberkit.bounds import BoundReport, BoundTable
from tauberkit.config import RunConfig
from tauberkit.verify import CHECKS, register, run_check, run_checks

CHEAP = ['kernel_concavity', 'one_sided_chain', 'theta_sharpness']


@pytest.fixture
def config():
    return RunConfig(progress=False)


def test_registered_checks():
    assert set(CHECKS) == {
        'alpha_balance', 'claim_infeasibility', 'constants_table', 'convolution_decay',
        'extremal_transforms', 'fejer_remark', 'kernel_concavity', 'kernel_identities',
        'mollified_example', 'one_sided_chain', 'oscillation_bound', 'ratio_extremum',
        'single_crossing', 'theta_sharpness', 'zigzag_sandwich',
    }


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_check_passes(name, config):
    rows = run_check(name, config)
    assert rows
    for row in rows:
        assert isinstance(row, BoundReport)
        assert row.name.startswith(name)
        assert row.passed, row


def test_unknown_check(config):
    with pytest.raises(ValueError):
        run_check('riemann_hypothesis', config)
    with pytest.raises(ValueError):
        run_checks(config, ['theta_sharpness', 'riemann_hypothesis'])


def test_register_refuses_duplicates():
    with pytest.raises(ValueError):
        register('theta_sharpness')(lambda config: [])


def test_failing_check_becomes_a_row(config, monkeypatch):
    def broken(config):
        raise ZeroDivisionError("no")

    monkeypatch.setitem(CHECKS, 'broken', broken)
    table = run_checks(config, ['broken'])
    assert isinstance(table, BoundTable)
    assert not table.all_passed
    row = table.iloc[0]
    assert row['name'] == 'broken'
    assert math.isnan(row['computed'])
    assert 'ZeroDivisionError' in row['note']


def test_tolerance_overrides_reach_the_checks(config):
    assert run_checks(config, ['theta_sharpness']).all_passed
    strict = config.updated(tolerances=dict(theta_ends=0.))
    table = run_checks(strict, ['theta_sharpness'])
    assert not table.all_passed
    assert 'theta_sharpness.small_theta' in list(table.failures['name'])


def test_rows_keep_name_order(config):
    table = run_checks(config, list(reversed(CHEAP)))
    names = [n.split('.')[0] for n in table['name']]
    assert names == sorted(names)


def test_threads_give_the_same_table(config):
    serial = run_checks(config, CHEAP)
    threaded = run_checks(config.updated(n_jobs=3), CHEAP)
    pd.testing.assert_frame_equal(pd.DataFrame(serial), pd.DataFrame(threaded))
