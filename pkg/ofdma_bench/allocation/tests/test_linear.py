import numpy as np
import pytest

from ofdma_bench.allocation.exceptions import MethodInapplicableError
from ofdma_bench.allocation.linear import is_linear_case
from ofdma_bench.allocation.linear import linear_power_split
from ofdma_bench.allocation.metrics import per_user_rates
from ofdma_bench.allocation.rootfind import rootfind_power_split
from ofdma_bench.allocation.services import STATUS_FALLBACK
from ofdma_bench.allocation.services import STATUS_OK
from ofdma_bench.allocation.services import compare_methods
from ofdma_bench.allocation.system import AssignmentMatrix
from ofdma_bench.allocation.system import ChannelMatrix
from ofdma_bench.allocation.system import Scenario
from ofdma_bench.allocation.tests.factories import RandomInstance


class TestLinearPowerSplit:
    def test_table4_rate_ratio(self, table4):
        allocation = linear_power_split(
            table4.channel,
            table4.assignment,
            table4.scenario.proportions,
            table4.scenario.total_power,
        )
        rates = per_user_rates(table4.channel, table4.assignment, allocation)
        assert rates[0] / rates[1] == pytest.approx(3.0, abs=1e-6)
        assert rates == pytest.approx([13.39008, 4.46336], rel=0.005)

    def test_table4_powers(self, table4):
        allocation = linear_power_split(
            table4.channel,
            table4.assignment,
            table4.scenario.proportions,
            table4.scenario.total_power,
        )
        assert allocation.per_user_total == pytest.approx([7.008, 2.992], abs=0.01)
        assert allocation.total_power == pytest.approx(10.0, rel=1e-12)

    def test_inapplicable_when_quotas_not_proportional(self, table5):
        with pytest.raises(MethodInapplicableError, match="rootfind"):
            linear_power_split(table5.channel, table5.assignment, (0.75, 0.25), 1.0)

    def test_is_linear_case(self, table4, table5):
        assert is_linear_case(table4.assignment, (0.75, 0.25))
        assert is_linear_case(table5.assignment, (0.5, 0.5))
        assert not is_linear_case(table5.assignment, (0.75, 0.25))

    def test_negative_total_clamped(self):
        channel = ChannelMatrix([[1.0, 1000.0, 0.0, 0.0], [0.0, 0.0, 1000.0, 1000.0]])
        assignment = AssignmentMatrix.from_owners((0, 0, 1, 1), 2)
        allocation = linear_power_split(channel, assignment, (0.5, 0.5), 0.01)
        assert allocation.per_user_total[0] == 0.0
        assert allocation.per_user_total[1] == pytest.approx(0.01)
        assert np.all(allocation.powers >= 0)

    def test_single_user_takes_everything(self):
        channel = ChannelMatrix([[4.0, 2.0, 1.0]])
        assignment = AssignmentMatrix.from_owners((0, 0, 0), 1)
        allocation = linear_power_split(channel, assignment, (1.0,), 2.0)
        assert allocation.total_power == pytest.approx(2.0)

    def test_inapplicable_when_a_user_cannot_power_every_subcarrier(self):
        channel = ChannelMatrix([[0.01, 100.0, 0.0, 0.0], [0.0, 0.0, 100.0, 100.0]])
        assignment = AssignmentMatrix.from_owners((0, 0, 1, 1), 2)
        with pytest.raises(MethodInapplicableError, match=r"Users \[1\]"):
            linear_power_split(channel, assignment, (0.5, 0.5), 1.0)

    def test_matches_rootfind_on_linear_case(self):
        compared = 0
        for seed in range(20):
            instance = RandomInstance(Scenario(num_users=2, num_subcarriers=16, seed=seed))
            args = (instance.channel, instance.assignment, instance.scenario.proportions, 1.0)
            rootfind = rootfind_power_split(*args)
            try:
                linear = linear_power_split(*args)
            except MethodInapplicableError:
                continue
            assert linear.per_user_total == pytest.approx(rootfind.per_user_total, rel=1e-6)
            compared += 1
        assert compared > 0

    def test_low_snr_falls_back_to_rootfind(self):
        fallbacks = 0
        for seed in range(50):
            scenario = Scenario(num_users=2, num_subcarriers=16, mean_snr_db=0.0, seed=seed)
            instance = RandomInstance(scenario)
            report = compare_methods(
                scenario,
                instance.channel,
                instance.assignment,
                "linear,rootfind",
            )
            linear, rootfind = report.rows
            assert linear.status in {STATUS_OK, STATUS_FALLBACK}
            assert linear.report.proportionality_error <= 1e-6
            assert linear.allocation.per_user_total == pytest.approx(
                rootfind.allocation.per_user_total,
                rel=1e-6,
            )
            fallbacks += linear.status == STATUS_FALLBACK
        assert fallbacks > 0
