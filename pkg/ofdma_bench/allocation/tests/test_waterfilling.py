import math

import numpy as np
import pytest

from ofdma_bench.allocation.exceptions import InvalidInputError
from ofdma_bench.allocation.waterfilling import compute_vw
from ofdma_bench.allocation.waterfilling import fill
from ofdma_bench.allocation.waterfilling import waterfill_user
from ofdma_bench.allocation.waterfilling import waterfilled_rate


class TestFill:
    def test_equal_gains_split_evenly(self):
        result = fill([1.0, 1.0, 1.0, 1.0], 4.0)
        assert result.powers == pytest.approx([1.0] * 4)
        assert result.water_level == pytest.approx(2.0)

    def test_weak_subchannel_dropped(self):
        result = fill([1.0, 100.0], 0.1)
        assert result.powers == pytest.approx([0.0, 0.1])
        assert result.active.tolist() == [False, True]

    def test_zero_budget(self):
        assert waterfill_user([3.0, 5.0], 0.0) == pytest.approx([0.0, 0.0])

    def test_kkt_conditions(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            gains = rng.exponential(10.0, size=int(rng.integers(1, 40)))
            budget = float(rng.uniform(0.01, 5.0))
            result = fill(gains, budget)
            assert result.powers.sum() == pytest.approx(budget, rel=1e-9)
            assert np.all(result.powers >= 0)
            levels = result.powers[result.active] + 1.0 / gains[result.active]
            assert np.all(np.abs(levels - result.water_level) <= 1e-9 * result.water_level)
            assert np.all(1.0 / gains[~result.active] >= result.water_level * (1 - 1e-9))

    @pytest.mark.parametrize(
        ("gains", "budget"),
        [([], 1.0), ([1.0, 0.0], 1.0), ([1.0], -1.0), ([[1.0]], 1.0)],
    )
    def test_rejects_invalid(self, gains, budget):
        with pytest.raises(InvalidInputError):
            fill(gains, budget)


class TestComputeVw:
    def test_single_gain(self):
        summary = compute_vw([7.0])
        assert summary.offset == 0.0
        assert summary.gain_ratio == pytest.approx(1.0)

    def test_known_values(self):
        summary = compute_vw([10.0, 8.0, 9.0])
        assert summary.offset == pytest.approx(1 / 72 + 2 / 80)
        assert summary.gain_ratio == pytest.approx((9 / 8 * 10 / 8) ** (1 / 3))

    def test_closed_form_rate_when_all_active(self):
        gains = np.array([10.0, 8.0, 9.0])
        summary = compute_vw(gains)
        budget = 7.0
        closed = len(gains) * math.log2(
            summary.gain_ratio * (1 + gains.min() * (budget - summary.offset) / len(gains)),
        )
        rate, _ = waterfilled_rate(gains, budget)
        assert rate == pytest.approx(closed, rel=1e-12)


class TestWaterfilledRate:
    def test_slope_matches_finite_difference(self):
        gains = np.array([3.0, 0.5, 12.0, 7.0])
        step = 1e-6
        for budget in (0.05, 0.8, 4.0):
            _, slope = waterfilled_rate(gains, budget)
            up, _ = waterfilled_rate(gains, budget + step)
            down, _ = waterfilled_rate(gains, budget - step)
            assert slope == pytest.approx((up - down) / (2 * step), rel=1e-5)

    def test_rate_increases_with_budget(self):
        gains = [2.0, 9.0]
        rates = [waterfilled_rate(gains, p)[0] for p in (0.0, 0.5, 1.0, 2.0)]
        assert rates[0] == 0.0
        assert rates == sorted(rates)
