import numpy as np
import pytest

from ofdma_bench.allocation.activeset import activeset_power_split
from ofdma_bench.allocation.activeset import global_waterfill
from ofdma_bench.allocation.metrics import total_capacity
from ofdma_bench.allocation.rootfind import rootfind_power_split
from ofdma_bench.allocation.tests.factories import RandomInstanceFactory


class TestActivesetPowerSplit:
    def test_table5(self, table5):
        allocation = activeset_power_split(table5.channel, table5.assignment, (0.5, 0.5), 1.0)
        assert allocation.per_user_total == pytest.approx([0.4858, 0.5142], abs=1e-3)
        assert allocation.per_user_total == pytest.approx([0.5, 0.5], abs=0.02)
        capacity = total_capacity(table5.channel, table5.assignment, allocation)
        assert capacity == pytest.approx(4.620, abs=0.005)
        assert capacity == pytest.approx(4.85, rel=0.10)

    def test_table6(self, table6):
        allocation = activeset_power_split(table6.channel, table6.assignment, (1, 1, 1, 1), 1.0)
        assert allocation.per_user_total == pytest.approx([0.25] * 4, abs=0.02)

    def test_table6_pools_same_subcarriers_as_table5(self, table5, table6):
        five = activeset_power_split(table5.channel, table5.assignment, (1, 1), 1.0)
        six = activeset_power_split(table6.channel, table6.assignment, (1, 1, 1, 1), 1.0)
        assert five.powers.sum(axis=0) == pytest.approx(six.powers.sum(axis=0))

    def test_corner_solution_beats_grid(self):
        gains = np.array([1.0, 10.0])
        powers = global_waterfill(gains, 0.5)
        assert powers == pytest.approx([0.0, 0.5])
        best = np.log2(1 + powers * gains).sum()
        grid = np.linspace(0.0, 0.5, 10001)
        values = np.log2(1 + grid * gains[0]) + np.log2(1 + (0.5 - grid) * gains[1])
        assert values.max() <= best + 1e-9

    def test_kkt_on_random_instances(self):
        for instance in RandomInstanceFactory.build_batch(50):
            scenario = instance.scenario
            allocation = activeset_power_split(
                instance.channel,
                instance.assignment,
                scenario.proportions,
                scenario.total_power,
            )
            mask = instance.assignment.mask
            powers = allocation.powers[mask]
            inverse = 1.0 / instance.channel.gains[mask]
            active = powers > 0
            level = (powers[active] + inverse[active]).max()
            assert np.all(np.abs(powers[active] + inverse[active] - level) <= 1e-9 * level)
            assert np.all(inverse[~active] >= level * (1 - 1e-9))
            assert powers.sum() == pytest.approx(scenario.total_power, rel=1e-9)

    def test_dominates_proportional_split(self):
        for instance in RandomInstanceFactory.build_batch(30):
            scenario = instance.scenario
            args = (
                instance.channel,
                instance.assignment,
                scenario.proportions,
                scenario.total_power,
            )
            active = total_capacity(
                instance.channel, instance.assignment, activeset_power_split(*args),
            )
            proportional = total_capacity(
                instance.channel, instance.assignment, rootfind_power_split(*args),
            )
            assert active >= proportional - 1e-9
