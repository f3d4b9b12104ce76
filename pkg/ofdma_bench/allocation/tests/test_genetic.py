import numpy as np
import pytest

from ofdma_bench.allocation.activeset import activeset_power_split
from ofdma_bench.allocation.genetic import FitnessEvaluator
from ofdma_bench.allocation.genetic import Individual
from ofdma_bench.allocation.genetic import evaluate_population
from ofdma_bench.allocation.genetic import evolve
from ofdma_bench.allocation.genetic import fitness
from ofdma_bench.allocation.genetic import ga_power_split
from ofdma_bench.allocation.genetic import generation_rng
from ofdma_bench.allocation.genetic import init_population
from ofdma_bench.allocation.metrics import total_capacity
from ofdma_bench.allocation.system import AssignmentMatrix
from ofdma_bench.allocation.system import ChannelMatrix
from ofdma_bench.allocation.system import GaParams
from ofdma_bench.allocation.tests.factories import GaParamsFactory


def _run(fixture, params, seed=0, workers=1):
    return ga_power_split(
        fixture.channel,
        fixture.assignment,
        fixture.scenario.proportions,
        fixture.scenario.total_power,
        params=params,
        seed=seed,
        workers=workers,
    )


class TestPopulation:
    def test_init_population_on_simplex(self):
        population = init_population(4, GaParamsFactory(), seed=9)
        assert len(population) == 16
        assert population[0].split == pytest.approx([0.25] * 4)
        for individual in population:
            assert individual.split.sum() == pytest.approx(1.0)
            assert np.all(individual.split >= 0)
            assert not individual.evaluated

    def test_evolve_keeps_elites(self, table5):
        params = GaParamsFactory()
        evaluator = FitnessEvaluator(table5.channel, table5.assignment, (0.5, 0.5), 1.0, 10.0)
        population = evaluate_population(init_population(2, params, seed=1), evaluator)
        best = max(ind.fitness for ind in population)
        offspring = evolve(population, params, generation_rng(1, 2), evaluator)
        assert len(offspring) == len(population)
        assert max(ind.fitness for ind in offspring) >= best
        assert all(ind.evaluated for ind in offspring)

    def test_every_generation_stays_on_the_simplex(self, table6):
        params = GaParamsFactory(mutation_sigma=0.5)
        evaluator = FitnessEvaluator(
            table6.channel,
            table6.assignment,
            table6.scenario.proportions,
            1.0,
            10.0,
        )
        population = evaluate_population(init_population(4, params, seed=3), evaluator)
        for generation in range(2, 12):
            population = evolve(population, params, generation_rng(3, generation), evaluator)
            for individual in population:
                assert individual.split.sum() == pytest.approx(1.0, abs=1e-12)
                assert np.all(individual.split >= 0)

    def test_without_variation_offspring_copy_parents(self, table5):
        params = GaParamsFactory(crossover_probability=0.0, mutation_sigma=0.0)
        evaluator = FitnessEvaluator(table5.channel, table5.assignment, (0.5, 0.5), 1.0, 10.0)
        population = evaluate_population(init_population(2, params, seed=6), evaluator)
        offspring = evolve(population, params, generation_rng(6, 2), evaluator)
        ranked = sorted(population, key=lambda ind: -ind.fitness)
        assert offspring[: params.elite_count] == ranked[: params.elite_count]
        parents = np.array([ind.split for ind in population])
        for child in offspring:
            distance = np.abs(parents - child.split).max(axis=1)
            assert distance.min() <= 1e-12

    def test_threaded_evaluation_matches_serial(self, table5):
        evaluator = FitnessEvaluator(table5.channel, table5.assignment, (0.5, 0.5), 1.0, 10.0)
        population = init_population(2, GaParamsFactory(), seed=4)
        serial = evaluate_population(population, evaluator, workers=1)
        threaded = evaluate_population(population, evaluator, workers=4)
        assert [i.fitness for i in serial] == [i.fitness for i in threaded]


class TestFitness:
    def test_zero_penalty_is_capacity(self, table5):
        uniform = Individual(np.array([0.5, 0.5]))
        value = fitness(uniform, table5.channel, table5.assignment, (0.5, 0.5), 1.0, 0.0)
        decoded = FitnessEvaluator(
            table5.channel, table5.assignment, (0.5, 0.5), 1.0, 0.0,
        ).decode(uniform.split)
        assert value == pytest.approx(decoded.capacity)
        assert decoded.user_rates.sum() / 8 == pytest.approx(decoded.capacity)

    def test_penalty_lowers_fitness(self, table5):
        uniform = Individual(np.array([0.5, 0.5]))
        free = fitness(uniform, table5.channel, table5.assignment, (0.5, 0.5), 1.0, 0.0)
        penalized = fitness(uniform, table5.channel, table5.assignment, (0.5, 0.5), 1.0, 10.0)
        assert penalized < free


class TestGaPowerSplit:
    @pytest.mark.parametrize("seed", range(5))
    def test_best_so_far_is_monotone(self, table5, seed):
        _, trace = _run(table5, GaParamsFactory(), seed=seed)
        best = trace.best_fitness
        assert all(later >= earlier for earlier, later in zip(best, best[1:], strict=False))
        assert trace.records[0].generation == 1

    def test_deterministic(self, table5):
        first_allocation, first = _run(table5, GaParamsFactory(), seed=3)
        second_allocation, second = _run(table5, GaParamsFactory(), seed=3)
        assert first.records == second.records
        assert np.array_equal(first_allocation.powers, second_allocation.powers)

    def test_workers_do_not_change_result(self, table5):
        _, serial = _run(table5, GaParamsFactory(), seed=8, workers=1)
        _, threaded = _run(table5, GaParamsFactory(), seed=8, workers=3)
        assert serial.records == threaded.records

    def test_pure_capacity_close_to_optimum(self, table5):
        params = GaParams(penalty_weight=0.0, max_generations=100)
        allocation, trace = _run(table5, params, seed=0)
        assert len(trace) <= 100
        capacity = total_capacity(table5.channel, table5.assignment, allocation)
        optimum = total_capacity(
            table5.channel,
            table5.assignment,
            activeset_power_split(table5.channel, table5.assignment, (0.5, 0.5), 1.0),
        )
        assert 0.95 * optimum <= capacity <= optimum + 1e-9

    def test_user_capacities_converge_under_equal_proportions(self, table5):
        _, trace = _run(table5, GaParams(), seed=0)
        first, second = trace.records[-1].user_capacities
        assert abs(first / (first + second) - 0.5) < 0.05

    def test_conserves_power(self, table6):
        allocation, _ = _run(table6, GaParamsFactory(), seed=2)
        assert allocation.total_power == pytest.approx(1.0, rel=1e-9)
        assert np.all(allocation.powers[~table6.assignment.mask] == 0)

    def test_single_user_matches_waterfilling(self):
        channel = ChannelMatrix([[5.0, 0.3, 40.0]])
        assignment = AssignmentMatrix.from_owners((0, 0, 0), 1)
        allocation, _ = ga_power_split(channel, assignment, (1.0,), 2.0, GaParamsFactory())
        expected = activeset_power_split(channel, assignment, (1.0,), 2.0)
        assert allocation.powers == pytest.approx(expected.powers, abs=1e-9)
