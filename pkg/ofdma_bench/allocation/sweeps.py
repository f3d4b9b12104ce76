"""
Monte-Carlo user sweeps: capacity versus number of users.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from itertools import groupby

import numpy as np

from .assignment import assign_subcarriers
from .channels import generate_channel
from .exceptions import AllocationError
from .exceptions import InvalidInputError
from .services import compare_methods
from .services import parse_methods
from .system import MAX_SEED
from .system import METHODS
from .system import Scenario

logger = logging.getLogger(__name__)

TRIAL_SEED_SHIFT = 32


@dataclass(frozen=True)
class SweepSpec:
    """Inclusive user range, trial count and methods over a base scenario."""

    user_min: int
    user_max: int
    trials: int
    methods: tuple[str, ...] = METHODS
    base: Scenario = field(default_factory=lambda: Scenario(num_users=1))

    def __post_init__(self):
        if self.user_min < 1 or self.user_max < self.user_min:
            msg = f"User range {self.user_min}..{self.user_max} is empty"
            raise InvalidInputError(msg)
        if self.user_max > self.base.num_subcarriers:
            msg = (
                f"User range reaches {self.user_max} users but only "
                f"{self.base.num_subcarriers} subcarriers exist"
            )
            raise InvalidInputError(msg)
        if self.trials < 1:
            msg = f"Trials must be at least 1, got {self.trials}"
            raise InvalidInputError(msg)
        object.__setattr__(self, "methods", tuple(parse_methods(self.methods)))

    @property
    def user_counts(self) -> range:
        return range(self.user_min, self.user_max + 1)


@dataclass(frozen=True)
class SweepRow:
    method: str
    users: int
    trial: int
    capacity: float
    prop_error: float
    runtime_s: float
    status: str


@dataclass(frozen=True)
class SweepMean:
    method: str
    users: int
    trials: int
    mean_capacity: float
    stderr_capacity: float
    mean_prop_error: float


def mix_seed(base_seed: int, num_users: int, trial: int) -> int:
    """base_seed XOR (K * 2**32 + t), kept in the unsigned 64-bit range."""
    return (base_seed ^ ((num_users << TRIAL_SEED_SHIFT) + trial)) & MAX_SEED


def run_trial(spec: SweepSpec, num_users: int, trial: int) -> list[SweepRow]:
    """
    One (K, trial) cell: channel, uniform-proportion assignment, every method.

    Module-level so process pools can pickle it.
    """
    seed = mix_seed(spec.base.seed, num_users, trial)
    scenario = replace(spec.base, num_users=num_users, proportions=(), seed=seed)
    try:
        channel = generate_channel(
            num_users,
            scenario.num_subcarriers,
            scenario.mean_snr_db,
            seed,
        )
        assignment = assign_subcarriers(channel, scenario.quotas(), scenario.total_power)
    except AllocationError as e:
        logger.warning("Trial K=%d t=%d failed before allocation: %s", num_users, trial, e)
        status = f"error:{type(e).__name__}"
        return [
            SweepRow(m, num_users, trial, float("nan"), float("nan"), 0.0, status)
            for m in spec.methods
        ]

    report = compare_methods(scenario, channel, assignment, spec.methods)
    rows = []
    for result in report.rows:
        if result.succeeded:
            capacity = result.report.total_capacity
            prop_error = result.report.proportionality_error
        else:
            capacity = prop_error = float("nan")
        rows.append(
            SweepRow(
                result.method,
                num_users,
                trial,
                capacity,
                prop_error,
                result.runtime_s,
                result.status,
            ),
        )
    return rows


def _method_rank(method: str) -> int:
    return METHODS.index(method)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """
    Run every (K, trial) cell and return rows ordered by (method, K, trial).

    Seeds are fixed per cell before any work starts, so the rows do not
    depend on the worker count.
    """
    cells = [(k, t) for k in spec.user_counts for t in range(spec.trials)]
    logger.info(
        "Sweeping K=%d..%d with %d trials (%d cells, %d workers)",
        spec.user_min,
        spec.user_max,
        spec.trials,
        len(cells),
        workers,
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(
                pool.map(
                    run_trial,
                    [spec] * len(cells),
                    [k for k, _ in cells],
                    [t for _, t in cells],
                ),
            )
    else:
        batches = [run_trial(spec, k, t) for k, t in cells]
    rows = [row for batch in batches for row in batch]
    rows.sort(key=lambda r: (_method_rank(r.method), r.users, r.trial))
    return rows


def summarize(rows: list[SweepRow]) -> list[SweepMean]:
    """Per-(method, K) mean capacity with its standard error over successful trials."""
    means = []
    ordered = sorted(rows, key=lambda r: (_method_rank(r.method), r.users))
    for (method, users), group in groupby(ordered, key=lambda r: (r.method, r.users)):
        members = [r for r in group if np.isfinite(r.capacity)]
        capacities = np.array([r.capacity for r in members])
        if capacities.size == 0:
            mean = stderr = prop = float("nan")
        else:
            mean = float(capacities.mean())
            stderr = (
                float(capacities.std(ddof=1) / np.sqrt(capacities.size))
                if capacities.size > 1
                else 0.0
            )
            prop = float(np.mean([r.prop_error for r in members]))
        means.append(SweepMean(method, users, capacities.size, mean, stderr, prop))
    return means


def parse_user_range(text: str) -> tuple[int, int]:
    """Parse ``A..B`` (or a single ``K``) into an inclusive range."""
    low, sep, high = text.partition("..")
    try:
        user_min = int(low)
        user_max = int(high) if sep else user_min
    except ValueError as e:
        msg = f"User range must look like A..B, got '{text}'"
        raise InvalidInputError(msg) from e
    if user_min < 1 or user_max < user_min:
        msg = f"User range {text} is empty"
        raise InvalidInputError(msg)
    return user_min, user_max
