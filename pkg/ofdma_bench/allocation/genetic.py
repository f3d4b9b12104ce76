"""
Real-coded genetic algorithm over cross-user power shares.

A chromosome is a point on the K-simplex: user k receives split[k] * P_total
and water-fills it over its own subcarriers. Fitness is the normalized total
capacity minus a penalty on the worst rate-share gap.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import field

import numpy as np

from .exceptions import InvalidInputError
from .system import AssignmentMatrix
from .system import ChannelMatrix
from .system import FloatArray
from .system import GaParams
from .system import PowerAllocation
from .system import check_dimensions
from .system import normalize_proportions
from .waterfilling import waterfill_user

logger = logging.getLogger(__name__)

IMPROVEMENT_THRESHOLD = 1e-9


@dataclass(frozen=True, eq=False)
class Individual:
    split: FloatArray
    fitness: float = float("nan")

    @property
    def evaluated(self) -> bool:
        return not np.isnan(self.fitness)


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    # best-so-far values
    best_fitness: float
    best_capacity: float
    user_capacities: tuple[float, ...]
    # best fitness within this generation only
    generation_best_fitness: float


@dataclass
class ConvergenceTrace:
    records: list[GenerationRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def best_fitness(self) -> list[float]:
        return [r.best_fitness for r in self.records]

    @property
    def best_capacity(self) -> list[float]:
        return [r.best_capacity for r in self.records]


@dataclass(frozen=True)
class Decoded:
    user_powers: list[FloatArray]
    user_rates: FloatArray
    capacity: float
    share_gap: float


class FitnessEvaluator:
    """Decodes splits for one (H, c, gamma, P_total) instance."""

    def __init__(  # noqa: PLR0913
        self,
        channel: ChannelMatrix,
        assignment: AssignmentMatrix,
        proportions: Sequence[float],
        total_power: float,
        penalty_weight: float,
    ):
        check_dimensions(channel, assignment)
        self.gammas = np.asarray(normalize_proportions(proportions))
        if self.gammas.size != assignment.num_users:
            msg = f"{self.gammas.size} proportions for {assignment.num_users} users"
            raise InvalidInputError(msg)
        self.user_gains = [
            assignment.user_gains(channel, k) for k in range(assignment.num_users)
        ]
        self.num_subcarriers = assignment.num_subcarriers
        self.total_power = total_power
        self.penalty_weight = penalty_weight

    def decode(self, split: FloatArray) -> Decoded:
        powers = [
            waterfill_user(gains, float(share * self.total_power))
            for gains, share in zip(self.user_gains, split, strict=True)
        ]
        rates = np.array(
            [
                np.log2(1.0 + p * g).sum()
                for p, g in zip(powers, self.user_gains, strict=True)
            ],
        )
        rate_sum = rates.sum()
        gap = float(np.abs(rates / rate_sum - self.gammas).max()) if rate_sum > 0 else 1.0
        return Decoded(powers, rates, float(rate_sum / self.num_subcarriers), gap)

    def __call__(self, split: FloatArray) -> float:
        decoded = self.decode(split)
        return decoded.capacity - self.penalty_weight * decoded.share_gap


def fitness(  # noqa: PLR0913
    individual: Individual,
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    proportions: Sequence[float],
    total_power: float,
    penalty_weight: float,
) -> float:
    """Total normalized capacity minus penalty_weight * max_k |R_k / sum R - gamma_k|."""
    evaluator = FitnessEvaluator(
        channel,
        assignment,
        proportions,
        total_power,
        penalty_weight,
    )
    return evaluator(individual.split)


def generation_rng(seed: int, generation: int) -> np.random.Generator:
    """Independent, reproducible stream for one generation of one run."""
    sequence = np.random.SeedSequence(seed, spawn_key=(generation,))
    return np.random.Generator(np.random.PCG64(sequence))


def _to_simplex(values: FloatArray) -> FloatArray:
    clipped = np.maximum(values, 0.0)
    total = clipped.sum()
    if total <= 0:
        return np.full(values.size, 1.0 / values.size)
    return clipped / total


def init_population(num_users: int, params: GaParams, seed: int) -> list[Individual]:
    """
    Uniform split plus simplex-uniform random splits (normalized exponentials).
    """
    if num_users < 1:
        msg = f"Population needs at least one user, got {num_users}"
        raise InvalidInputError(msg)
    rng = generation_rng(seed, 0)
    population = [Individual(np.full(num_users, 1.0 / num_users))]
    for _ in range(params.population_size - 1):
        population.append(Individual(_to_simplex(rng.exponential(size=num_users))))
    return population


def evaluate_population(
    population: list[Individual],
    evaluator: FitnessEvaluator,
    workers: int = 1,
) -> list[Individual]:
    """Fill in missing fitness values; concurrent evaluation gives the same result."""
    pending = [ind.split for ind in population if not ind.evaluated]
    if workers > 1 and len(pending) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = iter(list(pool.map(evaluator, pending)))
    else:
        scores = iter([evaluator(split) for split in pending])
    return [
        ind if ind.evaluated else Individual(ind.split, next(scores))
        for ind in population
    ]


def _ranked(population: list[Individual]) -> list[int]:
    # stable: among equal fitness the lower index ranks first
    return sorted(range(len(population)), key=lambda i: -population[i].fitness)


def _tournament(
    population: list[Individual],
    size: int,
    rng: np.random.Generator,
) -> Individual:
    entrants = rng.integers(0, len(population), size=size)
    winner = min(entrants, key=lambda i: (-population[i].fitness, i))
    return population[int(winner)]


def evolve(
    population: list[Individual],
    params: GaParams,
    rng: np.random.Generator,
    evaluator: FitnessEvaluator,
    workers: int = 1,
) -> list[Individual]:
    """
    Produce and evaluate the next generation.

    Elites are copied unchanged. Every other slot is a tournament pair,
    blended child = alpha * a + (1 - alpha) * b with probability
    crossover_probability (otherwise a copy of a), then Gaussian mutation
    and projection back onto the simplex. All random draws happen before
    any evaluation.
    """
    order = _ranked(population)
    offspring = [population[i] for i in order[: params.elite_count]]
    num_users = population[0].split.size
    while len(offspring) < len(population):
        first = _tournament(population, params.tournament_size, rng)
        second = _tournament(population, params.tournament_size, rng)
        if rng.random() < params.crossover_probability:
            alpha = rng.random()
            child = alpha * first.split + (1.0 - alpha) * second.split
        else:
            child = first.split.copy()
        child = child + rng.normal(0.0, params.mutation_sigma, size=num_users)
        offspring.append(Individual(_to_simplex(child)))
    return evaluate_population(offspring, evaluator, workers)


def _best(population: list[Individual]) -> Individual:
    return population[_ranked(population)[0]]


def ga_power_split(  # noqa: PLR0913
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    proportions: Sequence[float],
    total_power: float,
    params: GaParams | None = None,
    seed: int = 0,
    workers: int = 1,
) -> tuple[PowerAllocation, ConvergenceTrace]:
    """
    Evolve power shares until max_generations or stall_generations
    generations without a best-fitness gain above 1e-9.

    Returns:
        The decoded best individual and the per-generation trace.
    """
    params = params or GaParams()
    evaluator = FitnessEvaluator(
        channel,
        assignment,
        proportions,
        total_power,
        params.penalty_weight,
    )
    population = evaluate_population(
        init_population(assignment.num_users, params, seed),
        evaluator,
        workers,
    )
    best = _best(population)
    trace = ConvergenceTrace()

    def record(generation: int, generation_best: Individual) -> None:
        decoded = evaluator.decode(best.split)
        trace.records.append(
            GenerationRecord(
                generation=generation,
                best_fitness=best.fitness,
                best_capacity=decoded.capacity,
                user_capacities=tuple(float(r) for r in decoded.user_rates),
                generation_best_fitness=generation_best.fitness,
            ),
        )

    record(1, best)
    stalled = 0
    for generation in range(2, params.max_generations + 1):
        population = evolve(
            population,
            params,
            generation_rng(seed, generation),
            evaluator,
            workers,
        )
        leader = _best(population)
        if leader.fitness > best.fitness + IMPROVEMENT_THRESHOLD:
            stalled = 0
        else:
            stalled += 1
        if leader.fitness > best.fitness:
            best = leader
        record(generation, leader)
        if stalled >= params.stall_generations:
            logger.debug("GA stalled after %d generations", generation)
            break

    logger.debug(
        "GA finished after %d generations, best fitness %.6f",
        len(trace),
        best.fitness,
    )
    allocation = PowerAllocation.from_user_powers(
        assignment,
        evaluator.decode(best.split).user_powers,
    )
    return allocation, trace
