"""
Water-filling over parallel subchannels.

A subchannel with effective SNR H carries log2(1 + p * H) bit/s/Hz; the
capacity-maximizing split of a budget gives p_n = max(0, mu - 1 / H_n).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError
from .system import FloatArray

logger = logging.getLogger(__name__)

_ROUNDING_SLACK = 1e-13


@dataclass(frozen=True)
class WaterfillResult:
    powers: FloatArray
    # common value of 1/H + p over the active subchannels
    water_level: float
    active: np.ndarray


@dataclass(frozen=True)
class UserWaterfillSummary:
    """Excess-power offset V and geometric gain ratio W of one user's gains."""

    offset: float
    gain_ratio: float


def _as_gains(gains) -> FloatArray:
    values = np.asarray(gains, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        msg = "Water-filling needs a non-empty vector of gains"
        raise InvalidInputError(msg)
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        msg = "Water-filling gains must be positive and finite"
        raise InvalidInputError(msg)
    return values


def fill(gains, budget: float) -> WaterfillResult:
    """
    Iterative water-filling.

    Starts with every subchannel active, computes
    mu = (budget + sum(1/H_active)) / |active|, drops the subchannels whose
    power mu - 1/H would be negative and repeats until none are dropped.
    """
    values = _as_gains(gains)
    if not np.isfinite(budget) or budget < 0:
        msg = f"Water-filling budget must be nonnegative, got {budget}"
        raise InvalidInputError(msg)

    inverse = 1.0 / values
    active = np.ones(values.size, dtype=np.bool_)
    rounds = 0
    while True:
        rounds += 1
        level = (budget + inverse[active].sum()) / active.sum()
        # the strongest active subchannel always satisfies 1/H <= mu up to rounding
        negative = active & (inverse - level > _ROUNDING_SLACK * level)
        if not negative.any():
            break
        active &= ~negative

    powers = np.where(active, level - inverse, 0.0)
    np.maximum(powers, 0.0, out=powers)
    logger.debug(
        "Water-filled %d subchannels in %d rounds, %d active",
        values.size,
        rounds,
        int(active.sum()),
    )
    return WaterfillResult(powers, float(level), active)


def waterfill_user(gains, budget: float) -> FloatArray:
    """
    Split one user's power budget over its subcarriers.

    Args:
        gains: Positive effective SNRs of the user's subcarriers
        budget: Power available to the user (W)

    Returns:
        Per-subcarrier powers summing to the budget

    Raises:
        InvalidInputError: If gains is empty or not strictly positive
    """
    return fill(gains, budget).powers


def waterfilled_rate(gains, budget: float) -> tuple[float, float]:
    """
    Rate achieved by water-filling a budget, and its derivative in the budget.

    The derivative is the Lagrange multiplier 1 / (ln 2 * mu).
    """
    result = fill(gains, budget)
    values = np.asarray(gains, dtype=np.float64)
    rate = float(np.log2(1.0 + result.powers * values).sum())
    return rate, 1.0 / (math.log(2.0) * result.water_level)


def compute_vw(gains) -> UserWaterfillSummary:
    """
    V and W of a gain multiset, over the gains sorted ascending.

    V = sum_{n>=2} (H_(n) - H_(1)) / (H_(n) * H_(1)) and
    W = (prod_n H_(n) / H_(1)) ** (1 / N). With every subcarrier active the
    water-filled rate of budget P is N * log2(W * (1 + H_(1) * (P - V) / N)).
    """
    ordered = np.sort(_as_gains(gains))
    weakest = ordered[0]
    offset = float(((ordered[1:] - weakest) / (ordered[1:] * weakest)).sum())
    gain_ratio = float(np.exp(np.log(ordered / weakest).mean()))
    return UserWaterfillSummary(offset=offset, gain_ratio=gain_ratio)
