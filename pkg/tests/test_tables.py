import numpy as np
import pytest

from analysis.oracle import exact_joint_distribution
from analysis.tables import BasisConfig, JointDistribution, joint_distribution_closed_form, table_rows
from utils.error_handler import ValidationError

NO_HWP, BOTH_HWP = BasisConfig.NO_HWP, BasisConfig.BOTH_HWP


@pytest.mark.parametrize("config", list(BasisConfig))
@pytest.mark.parametrize("x", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_closed_form_matches_device_enumeration(config, x):
    closed = joint_distribution_closed_form(x, config)
    exact = exact_joint_distribution(x, config)
    assert np.allclose(closed.p, exact.p, atol=1e-12)


@pytest.mark.parametrize("config", list(BasisConfig))
def test_tables_are_normalized_on_grid(config):
    for x in np.linspace(0.0, 1.0, 101):
        table = joint_distribution_closed_form(x, config)
        assert table.is_valid()
        assert table.total() == pytest.approx(1.0, abs=1e-12)
        assert table.eve_share() == pytest.approx(x, abs=1e-12)


@pytest.mark.parametrize("config", list(BasisConfig))
def test_entries_are_affine_in_x(config):
    low, mid, high = (joint_distribution_closed_form(x, config).p for x in (0.1, 0.4, 0.7))
    assert np.allclose(mid - low, high - mid, atol=1e-12)


def test_no_eve_is_a_perfect_channel():
    table = joint_distribution_closed_form(0.0, NO_HWP)
    for j in range(1, 5):
        assert table.entry(j, None, j) == pytest.approx(0.25)
    assert table.eve_share() == 0.0


def test_table1_chi3_at_full_presence():
    table = joint_distribution_closed_form(1.0, NO_HWP)
    bob = table.bob_marginal()
    assert bob[2, 2] == pytest.approx(1 / 8)
    assert bob[2, 3] == pytest.approx(1 / 8)
    assert table.entry(1, 1, 1) == pytest.approx(0.25)


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0])
def test_table1_chi3_row_split(x):
    table = joint_distribution_closed_form(x, NO_HWP)
    assert table.bob_marginal()[2, 2] == pytest.approx((2 - x) / 8, abs=1e-12)
    assert table.bob_marginal()[2, 3] == pytest.approx(x / 8, abs=1e-12)


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0])
def test_table2_chi1_column(x):
    table = joint_distribution_closed_form(x, BOTH_HWP)
    assert table.entry(1, None, 1) == pytest.approx((1 - x) / 4, abs=1e-12)
    assert table.entry(1, 2, 1) == pytest.approx(x / 16, abs=1e-12)
    assert table.entry(1, 3, 1) == pytest.approx(x / 64, abs=1e-12)
    assert np.allclose(table.bob_marginal()[0], [(8 - 5 * x) / 32, x / 32, x / 16, x / 16], atol=1e-12)
    assert np.allclose(table.eve_marginal()[0], [0.0, x / 8, x / 16, x / 16], atol=1e-12)


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0])
def test_table2_chi3_column(x):
    table = joint_distribution_closed_form(x, BOTH_HWP)
    assert table.entry(3, None, 3) + table.entry(3, 3, 3) == pytest.approx((8 - 7 * x) / 32, abs=1e-12)
    assert np.allclose(table.bob_marginal()[2], [x / 16, x / 16, (4 - 3 * x) / 16, x / 16], atol=1e-12)
    assert np.allclose(table.eve_marginal()[2], [x / 16] * 4, atol=1e-12)


def test_full_presence_bob_marginal_for_chi1():
    table = joint_distribution_closed_form(1.0, BOTH_HWP)
    assert table.bob_marginal()[0, 0] == pytest.approx(3 / 32)


def test_bob_marginals_are_uniform():
    for config in BasisConfig:
        table = joint_distribution_closed_form(0.6, config)
        assert np.allclose(table.bob_marginal().sum(axis=0), 0.25, atol=1e-12)


def test_closed_form_rejects_bad_x():
    with pytest.raises(ValidationError):
        joint_distribution_closed_form(1.2, NO_HWP)


def test_table_shape_is_checked():
    with pytest.raises(ValidationError):
        JointDistribution(p=np.zeros((4, 4, 4)), basis_config=NO_HWP, x=0.0)


def test_table_rows_are_canonical():
    rows = list(table_rows(joint_distribution_closed_form(1.0, NO_HWP)))
    assert len(rows) == 80
    assert rows[0][:3] == (1, 1, 1)
    assert rows[16][:3] == (1, None, 1)
    assert rows[20][:3] == (2, 1, 1)


def test_table_numbers_map_to_configs():
    assert BasisConfig.from_table_number(1) == NO_HWP
    assert BasisConfig.from_table_number(2) == BOTH_HWP
    with pytest.raises(ValidationError):
        BasisConfig.from_table_number(3)


def test_exact_oracle_with_skewed_priors_keeps_normalization():
    table = exact_joint_distribution(0.5, BOTH_HWP, priors=(0.4, 0.1, 0.3, 0.2))
    assert table.is_valid()
    assert table.p[0].sum() == pytest.approx(0.4)
    assert table.p[2].sum() == pytest.approx(0.25)
