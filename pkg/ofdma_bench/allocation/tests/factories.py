"""
Factory classes for generating allocation scenarios and random instances.
"""

import factory
import numpy as np

from ofdma_bench.allocation.assignment import assign_subcarriers
from ofdma_bench.allocation.channels import generate_channel
from ofdma_bench.allocation.system import GaParams
from ofdma_bench.allocation.system import Scenario


class GaParamsFactory(factory.Factory):
    """Small, fast GA settings for tests."""

    population_size = 16
    max_generations = 30
    crossover_probability = 0.9
    mutation_sigma = 0.05
    elite_count = 2
    tournament_size = 3
    penalty_weight = 10.0
    stall_generations = 10

    class Meta:
        model = GaParams


class ScenarioFactory(factory.Factory):
    num_users = factory.Faker("random_int", min=1, max=8)
    num_subcarriers = factory.LazyAttribute(
        lambda obj: max(obj.num_users, 8 * obj.num_users),
    )
    total_power = 1.0
    mean_snr_db = 50.0
    method = "active_set"
    seed = factory.Sequence(lambda n: n)
    ga_params = factory.SubFactory(GaParamsFactory)

    class Meta:
        model = Scenario


class RandomInstance:
    """A scenario with its seeded channel and greedy assignment."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.channel = generate_channel(
            scenario.num_users,
            scenario.num_subcarriers,
            scenario.mean_snr_db,
            scenario.seed,
        )
        self.assignment = assign_subcarriers(
            self.channel,
            scenario.quotas(),
            scenario.total_power,
        )


def _random_scenario(seed: int) -> Scenario:
    rng = np.random.default_rng(seed)
    num_users = int(rng.integers(1, 9))
    num_subcarriers = int(rng.integers(num_users, 65))
    return Scenario(
        num_users=num_users,
        num_subcarriers=num_subcarriers,
        total_power=float(rng.uniform(0.1, 20.0)),
        proportions=tuple(float(w) for w in rng.uniform(0.2, 1.0, size=num_users)),
        mean_snr_db=float(rng.uniform(0.0, 50.0)),
        seed=seed,
    )


class RandomInstanceFactory(factory.Factory):
    """Random K <= 8, N <= 64 instance with arbitrary proportions."""

    scenario = factory.Sequence(_random_scenario)

    class Meta:
        model = RandomInstance
