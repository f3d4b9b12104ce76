import pytest
from scipy import optimize

from ofdma_bench.allocation.exceptions import InvalidInputError
from ofdma_bench.allocation.metrics import per_user_rates
from ofdma_bench.allocation.metrics import proportionality_error
from ofdma_bench.allocation.rootfind import STRATEGY_BISECTION
from ofdma_bench.allocation.rootfind import proportionality_residual
from ofdma_bench.allocation.rootfind import rootfind_power_split
from ofdma_bench.allocation.tests.factories import RandomInstanceFactory


def _bisection_oracle(instance):
    scenario = instance.scenario
    return optimize.bisect(
        proportionality_residual,
        0.0,
        scenario.total_power,
        args=(instance.channel, instance.assignment, scenario.proportions, scenario.total_power),
        xtol=1e-14 * scenario.total_power,
    )


class TestRootfindPowerSplit:
    def test_table4(self, table4):
        allocation = rootfind_power_split(
            table4.channel,
            table4.assignment,
            table4.scenario.proportions,
            table4.scenario.total_power,
        )
        rates = per_user_rates(table4.channel, table4.assignment, allocation)
        assert rates[0] / rates[1] == pytest.approx(3.0, abs=1e-6)
        assert allocation.per_user_total == pytest.approx([7.008, 2.992], abs=0.01)

    def test_agrees_with_bisection_oracle(self):
        for instance in RandomInstanceFactory.build_batch(100):
            scenario = instance.scenario
            allocation = rootfind_power_split(
                instance.channel,
                instance.assignment,
                scenario.proportions,
                scenario.total_power,
            )
            expected = _bisection_oracle(instance)
            assert abs(allocation.per_user_total[0] - expected) <= 1e-8 * scenario.total_power

    def test_strategies_agree(self):
        for instance in RandomInstanceFactory.build_batch(20):
            args = (
                instance.channel,
                instance.assignment,
                instance.scenario.proportions,
                instance.scenario.total_power,
            )
            newton = rootfind_power_split(*args)
            bisection = rootfind_power_split(*args, strategy=STRATEGY_BISECTION)
            assert newton.per_user_total == pytest.approx(
                bisection.per_user_total,
                abs=1e-8 * instance.scenario.total_power,
            )

    def test_proportional_rates(self):
        for instance in RandomInstanceFactory.build_batch(30):
            scenario = instance.scenario
            allocation = rootfind_power_split(
                instance.channel,
                instance.assignment,
                scenario.proportions,
                scenario.total_power,
            )
            rates = per_user_rates(instance.channel, instance.assignment, allocation)
            assert proportionality_error(rates, scenario.proportions) <= 1e-6
            assert allocation.total_power == pytest.approx(scenario.total_power, rel=1e-9)

    def test_unknown_strategy(self, table4):
        with pytest.raises(InvalidInputError, match="strategy"):
            rootfind_power_split(
                table4.channel,
                table4.assignment,
                (0.75, 0.25),
                10.0,
                strategy="secant",
            )


class TestProportionalityResidual:
    def test_brackets_root(self, table4):
        args = (table4.channel, table4.assignment, (0.75, 0.25), 10.0)
        assert proportionality_residual(0.0, *args) == pytest.approx(-10.0)
        assert proportionality_residual(10.0, *args) > 0

    def test_rejects_out_of_range(self, table4):
        with pytest.raises(InvalidInputError):
            proportionality_residual(11.0, table4.channel, table4.assignment, (0.75, 0.25), 10.0)
