"""
Shared domain types for downlink OFDMA power/subcarrier allocation.

All solver math runs in normalized units (subcarrier bandwidth = 1); the
OFDMA PHY profile is carried only to scale reported rates into bit/s.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import numpy.typing as npt
from django.conf import settings

from .exceptions import InfeasibleQuotaError
from .exceptions import InvalidInputError

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]

MAX_SEED = 2**64 - 1
GRID_NDIM = 2

# Power allocation methods, in report order.
LINEAR = "linear"
ROOTFIND = "rootfind"
ACTIVE_SET = "active_set"
GA = "ga"
METHODS = (LINEAR, ROOTFIND, ACTIVE_SET, GA)

DUPLEXING_TECHNIQUES = ("TDD", "FDD")


@dataclass(frozen=True)
class OfdmaProfile:
    """OFDMA PHY layer profile; reporting only."""

    frame_duration_ms: float = 5.0
    num_subcarriers_phy: int = 2048
    bandwidth_mhz: float = 20.0
    base_frequency_ghz: float = 5.8
    duplexing: str = "TDD"
    ttg_us: float = 106.0
    rtg_us: float = 60.0
    symbol_duration: float = 100.8
    preamble_symbols: int = 1

    def __post_init__(self):
        positive = {
            "frame_duration_ms": self.frame_duration_ms,
            "num_subcarriers_phy": self.num_subcarriers_phy,
            "bandwidth_mhz": self.bandwidth_mhz,
            "base_frequency_ghz": self.base_frequency_ghz,
            "ttg_us": self.ttg_us,
            "rtg_us": self.rtg_us,
            "symbol_duration": self.symbol_duration,
        }
        for name, value in positive.items():
            if not np.isfinite(value) or value <= 0:
                msg = f"OFDMA profile field {name} must be positive, got {value}"
                raise InvalidInputError(msg)
        if self.duplexing not in DUPLEXING_TECHNIQUES:
            msg = f"Unknown duplexing technique: {self.duplexing}"
            raise InvalidInputError(msg)

    @property
    def bandwidth_hz(self) -> float:
        return self.bandwidth_mhz * 1e6

    @classmethod
    def from_settings(cls) -> OfdmaProfile:
        """Build the profile from OFDMA_BENCH_CONFIG, falling back to defaults."""
        overrides = getattr(settings, "OFDMA_BENCH_CONFIG", {}).get("PROFILE", {})
        return cls(**overrides)


@dataclass(frozen=True)
class GaParams:
    """Genetic algorithm hyperparameters."""

    population_size: int = 40
    max_generations: int = 100
    crossover_probability: float = 0.9
    # Standard deviation of the share mutation, as a fraction of total power.
    mutation_sigma: float = 0.05
    elite_count: int = 2
    tournament_size: int = 3
    penalty_weight: float = 10.0
    stall_generations: int = 25

    def __post_init__(self):
        min_population = 2
        if self.population_size < min_population:
            msg = f"population_size must be at least 2, got {self.population_size}"
            raise InvalidInputError(msg)
        if not 0 <= self.elite_count < self.population_size:
            msg = (
                f"elite_count must be in [0, population_size), "
                f"got {self.elite_count}"
            )
            raise InvalidInputError(msg)
        if not 0.0 <= self.crossover_probability <= 1.0:
            msg = "crossover_probability must be in [0, 1]"
            raise InvalidInputError(msg)
        if self.mutation_sigma < 0 or self.penalty_weight < 0:
            msg = "mutation_sigma and penalty_weight must be nonnegative"
            raise InvalidInputError(msg)
        if self.max_generations < 1 or self.tournament_size < 1:
            msg = "max_generations and tournament_size must be positive"
            raise InvalidInputError(msg)
        if self.stall_generations < 1:
            msg = "stall_generations must be positive"
            raise InvalidInputError(msg)


def normalize_proportions(weights: Sequence[float]) -> tuple[float, ...]:
    """
    Scale positive weights so they sum to one.

    Raises:
        InvalidInputError: If the vector is empty or any weight is not positive.
    """
    values = np.asarray(weights, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        msg = "Proportion weights must be a non-empty vector"
        raise InvalidInputError(msg)
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        msg = f"Proportion weights must be positive and finite, got {list(weights)}"
        raise InvalidInputError(msg)
    normalized = values / values.sum()
    return tuple(float(v) for v in normalized)


@dataclass(frozen=True)
class QuotaVector:
    """Number of subcarriers N_k owned by each user."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts or any(c < 0 for c in self.counts):
            msg = f"Quotas must be a non-empty vector of nonnegative ints: {self.counts}"
            raise InvalidInputError(msg)

    @property
    def num_users(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, index: int) -> int:
        return self.counts[index]

    def __len__(self) -> int:
        return len(self.counts)


def compute_quotas(proportions: Sequence[float], num_subcarriers: int) -> QuotaVector:
    """
    Apportion N subcarriers to users by largest remainder.

    Floors of gamma_k * N go first; leftover units follow descending fractional
    remainder with ties to the lower user index. Any user left at zero then
    receives one unit from the most over-served user, so every user owns at
    least one subcarrier.

    Raises:
        InfeasibleQuotaError: If N is smaller than the number of users.
    """
    gammas = np.asarray(normalize_proportions(proportions))
    num_users = gammas.size
    if num_subcarriers < num_users:
        msg = (
            f"Cannot give {num_users} users at least one of "
            f"{num_subcarriers} subcarriers"
        )
        raise InfeasibleQuotaError(msg)

    shares = gammas * num_subcarriers
    counts = np.floor(shares).astype(np.int64)
    leftover = num_subcarriers - int(counts.sum())
    # stable sort keeps the lower index first among equal remainders
    order = np.argsort(-(shares - counts), kind="stable")
    counts[order[:leftover]] += 1

    for k in np.flatnonzero(counts == 0):
        surplus = np.where(counts > 1, counts - shares, -np.inf)
        donor = int(np.argmax(surplus))
        counts[donor] -= 1
        counts[k] += 1
        logger.debug("Moved one subcarrier from user %d to user %d", donor, k)

    return QuotaVector(tuple(int(c) for c in counts))


@dataclass(frozen=True)
class Scenario:
    """Full description of one allocation experiment."""

    num_users: int
    num_subcarriers: int = 64
    total_power: float = 1.0
    proportions: tuple[float, ...] = ()
    mean_snr_db: float = 50.0
    method: str = ACTIVE_SET
    seed: int = 0
    ga_params: GaParams = field(default_factory=GaParams)
    profile: OfdmaProfile = field(default_factory=OfdmaProfile)

    def __post_init__(self):
        if self.num_users < 1:
            msg = f"Scenario needs at least one user, got {self.num_users}"
            raise InvalidInputError(msg)
        if self.num_subcarriers < self.num_users:
            msg = (
                f"Scenario has {self.num_subcarriers} subcarriers for "
                f"{self.num_users} users"
            )
            raise InfeasibleQuotaError(msg)
        if not np.isfinite(self.total_power) or self.total_power <= 0:
            msg = f"Total power must be positive, got {self.total_power}"
            raise InvalidInputError(msg)
        if not np.isfinite(self.mean_snr_db):
            msg = "Mean SNR must be finite"
            raise InvalidInputError(msg)
        if self.method not in METHODS:
            msg = f"Unknown method: {self.method}"
            raise InvalidInputError(msg)
        if not 0 <= self.seed <= MAX_SEED:
            msg = f"Seed must be a 64-bit unsigned integer, got {self.seed}"
            raise InvalidInputError(msg)

        weights = self.proportions or (1.0,) * self.num_users
        if len(weights) != self.num_users:
            msg = (
                f"{len(weights)} proportions given for {self.num_users} users"
            )
            raise InvalidInputError(msg)
        # frozen dataclass: normalize in place on ingestion
        object.__setattr__(self, "proportions", normalize_proportions(weights))

    def quotas(self) -> QuotaVector:
        return compute_quotas(self.proportions, self.num_subcarriers)


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """K x N effective subchannel SNR per watt, H[k, n]."""

    gains: FloatArray

    def __post_init__(self):
        gains = np.array(self.gains, dtype=np.float64, copy=True)
        if gains.ndim != GRID_NDIM or 0 in gains.shape:
            msg = f"Channel matrix must be a non-empty 2-D grid, got shape {gains.shape}"
            raise InvalidInputError(msg)
        if not np.all(np.isfinite(gains)) or np.any(gains < 0):
            msg = "Channel gains must be finite and nonnegative"
            raise InvalidInputError(msg)
        gains.setflags(write=False)
        object.__setattr__(self, "gains", gains)

    @property
    def num_users(self) -> int:
        return self.gains.shape[0]

    @property
    def num_subcarriers(self) -> int:
        return self.gains.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChannelMatrix):
            return NotImplemented
        return bool(np.array_equal(self.gains, other.gains))

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class AssignmentMatrix:
    """Exclusive binary subcarrier ownership c[k, n] with its quotas."""

    mask: npt.NDArray[np.bool_]
    quotas: QuotaVector

    def __post_init__(self):
        mask = np.array(self.mask, dtype=np.bool_, copy=True)
        if mask.ndim != GRID_NDIM:
            msg = "Assignment must be a 2-D grid"
            raise InvalidInputError(msg)
        if mask.shape[0] != self.quotas.num_users:
            msg = (
                f"Assignment has {mask.shape[0]} rows but quotas cover "
                f"{self.quotas.num_users} users"
            )
            raise InvalidInputError(msg)
        if not np.all(mask.sum(axis=0) == 1):
            msg = "Every subcarrier must be owned by exactly one user"
            raise InvalidInputError(msg)
        if tuple(int(c) for c in mask.sum(axis=1)) != self.quotas.counts:
            msg = "Assignment rows do not match the quota vector"
            raise InvalidInputError(msg)
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_owners(cls, owners: Sequence[int], num_users: int) -> AssignmentMatrix:
        owner_array = np.asarray(owners, dtype=np.int64)
        mask = np.zeros((num_users, owner_array.size), dtype=np.bool_)
        mask[owner_array, np.arange(owner_array.size)] = True
        quotas = QuotaVector(tuple(int(c) for c in mask.sum(axis=1)))
        return cls(mask, quotas)

    @property
    def num_users(self) -> int:
        return self.mask.shape[0]

    @property
    def num_subcarriers(self) -> int:
        return self.mask.shape[1]

    @property
    def owners(self) -> npt.NDArray[np.int64]:
        """Owning user index of every subcarrier."""
        return np.argmax(self.mask, axis=0)

    def subcarriers_of(self, user: int) -> npt.NDArray[np.int64]:
        return np.flatnonzero(self.mask[user])

    def user_gains(self, channel: ChannelMatrix, user: int) -> FloatArray:
        return channel.gains[user, self.mask[user]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AssignmentMatrix):
            return NotImplemented
        return bool(np.array_equal(self.mask, other.mask))

    __hash__ = None  # type: ignore[assignment]


def check_dimensions(channel: ChannelMatrix, assignment: AssignmentMatrix) -> None:
    """Raise InvalidInputError unless H and c describe the same K x N system."""
    if channel.gains.shape != assignment.mask.shape:
        msg = (
            f"Channel shape {channel.gains.shape} does not match assignment "
            f"shape {assignment.mask.shape}"
        )
        raise InvalidInputError(msg)
    assigned = channel.gains[assignment.mask]
    if np.any(assigned <= 0):
        msg = "Every assigned subcarrier needs a strictly positive gain"
        raise InvalidInputError(msg)


@dataclass(frozen=True, eq=False)
class PowerAllocation:
    """Per-subcarrier powers p[k, n] in watts."""

    powers: FloatArray

    def __post_init__(self):
        powers = np.array(self.powers, dtype=np.float64, copy=True)
        if np.any(powers < 0) or not np.all(np.isfinite(powers)):
            msg = "Powers must be finite and nonnegative"
            raise InvalidInputError(msg)
        powers.setflags(write=False)
        object.__setattr__(self, "powers", powers)

    @classmethod
    def from_user_powers(
        cls,
        assignment: AssignmentMatrix,
        user_powers: Sequence[FloatArray],
    ) -> PowerAllocation:
        """Fold per-user subcarrier power vectors back into the K x N grid."""
        grid = np.zeros(assignment.mask.shape, dtype=np.float64)
        for user, powers in enumerate(user_powers):
            grid[user, assignment.mask[user]] = powers
        return cls(grid)

    @property
    def per_user_total(self) -> FloatArray:
        return self.powers.sum(axis=1)

    @property
    def total_power(self) -> float:
        return float(self.powers.sum())

    @property
    def shares(self) -> FloatArray:
        """Fraction of the total power given to each user."""
        total = self.total_power
        if total <= 0:
            return np.zeros(self.powers.shape[0])
        return self.per_user_total / total
