import numpy as np
import pytest
from scipy import stats

from ofdma_bench.allocation.channels import db_to_linear
from ofdma_bench.allocation.channels import generate_channel
from ofdma_bench.allocation.exceptions import InvalidInputError
from ofdma_bench.allocation.system import MAX_SEED


class TestGenerateChannel:
    def test_shape_and_positivity(self):
        channel = generate_channel(8, 64, 50.0, seed=3)
        assert channel.gains.shape == (8, 64)
        assert np.all(channel.gains > 0)

    def test_sample_mean_near_target(self):
        channel = generate_channel(8, 64, 50.0, seed=11)
        assert abs(channel.gains.mean() / 1e5 - 1.0) < 0.2

    def test_exponential_distribution(self):
        channel = generate_channel(100, 1000, 20.0, seed=2024)
        result = stats.kstest(channel.gains.ravel(), "expon", args=(0.0, db_to_linear(20.0)))
        assert result.statistic < 0.01

    def test_deterministic(self):
        first = generate_channel(1, 1, 0.0, seed=42)
        second = generate_channel(1, 1, 0.0, seed=42)
        assert first.gains.tobytes() == second.gains.tobytes()

    def test_seeds_differ(self):
        assert generate_channel(2, 8, 10.0, seed=1) != generate_channel(2, 8, 10.0, seed=2)

    def test_full_seed_range(self):
        channel = generate_channel(1, 4, 0.0, seed=MAX_SEED)
        assert channel.num_subcarriers == 4

    @pytest.mark.parametrize(
        ("args", "match"),
        [
            ((0, 4, 0.0, 0), "K >= 1"),
            ((1, 0, 0.0, 0), "N >= 1"),
            ((1, 4, float("inf"), 0), "finite"),
            ((1, 4, 0.0, -1), "Seed"),
            ((1, 4, 0.0, MAX_SEED + 1), "Seed"),
        ],
    )
    def test_rejects_invalid(self, args, match):
        with pytest.raises(InvalidInputError, match=match):
            generate_channel(*args)


def test_db_to_linear():
    assert db_to_linear(50.0) == pytest.approx(1e5)
    assert db_to_linear(0.0) == 1.0
