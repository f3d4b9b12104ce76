"""
Rate, capacity and fairness metrics of a power allocation.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError
from .exceptions import UndefinedMetricError
from .system import AssignmentMatrix
from .system import ChannelMatrix
from .system import FloatArray
from .system import OfdmaProfile
from .system import PowerAllocation


@dataclass(frozen=True)
class RateReport:
    """Per-user rates and aggregate capacity of one allocation."""

    per_user_rate: tuple[float, ...]
    total_capacity: float
    proportionality_error: float
    physical_total_rate: float
    per_user_power: tuple[float, ...]


def user_rate(gains, powers) -> float:
    """
    Rate of one user in bit/s per unit subcarrier bandwidth.

    Raises:
        InvalidInputError: If gains and powers differ in length.
    """
    gain_values = np.asarray(gains, dtype=np.float64)
    power_values = np.asarray(powers, dtype=np.float64)
    if gain_values.shape != power_values.shape:
        msg = (
            f"Gains and powers differ in length: {gain_values.size} "
            f"vs {power_values.size}"
        )
        raise InvalidInputError(msg)
    return float(np.log2(1.0 + power_values * gain_values).sum())


def _subcarrier_rates(
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    allocation: PowerAllocation,
) -> FloatArray:
    shape = channel.gains.shape
    if assignment.mask.shape != shape or allocation.powers.shape != shape:
        msg = (
            f"Dimension mismatch: H {shape}, c {assignment.mask.shape}, "
            f"p {allocation.powers.shape}"
        )
        raise InvalidInputError(msg)
    rates = np.log2(1.0 + allocation.powers * channel.gains)
    return np.where(assignment.mask, rates, 0.0)


def per_user_rates(
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    allocation: PowerAllocation,
) -> FloatArray:
    return _subcarrier_rates(channel, assignment, allocation).sum(axis=1)


def total_capacity(
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    allocation: PowerAllocation,
) -> float:
    """(1/N) * sum_k sum_n c[k,n] * log2(1 + p[k,n] * H[k,n]), in bit/s/Hz."""
    rates = _subcarrier_rates(channel, assignment, allocation)
    return float(rates.sum() / channel.num_subcarriers)


def group_capacity(
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    allocation: PowerAllocation,
    users: Sequence[int],
) -> float:
    """Normalized capacity of a user group over the subcarriers it owns."""
    rates = _subcarrier_rates(channel, assignment, allocation)
    members = list(users)
    owned = int(assignment.mask[members].sum())
    if owned == 0:
        msg = f"Users {members} own no subcarriers"
        raise UndefinedMetricError(msg)
    return float(rates[members].sum() / owned)


def proportionality_error(rates, proportions) -> float:
    """
    Largest gap between a user's rate share and its target proportion.

    Raises:
        InvalidInputError: If the vectors differ in length.
        UndefinedMetricError: If every rate is zero.
    """
    rate_values = np.asarray(rates, dtype=np.float64)
    targets = np.asarray(proportions, dtype=np.float64)
    if rate_values.shape != targets.shape:
        msg = "Rates and proportions differ in length"
        raise InvalidInputError(msg)
    total = rate_values.sum()
    if total <= 0:
        msg = "Proportionality error is undefined when every rate is zero"
        raise UndefinedMetricError(msg)
    return float(np.abs(rate_values / total - targets).max())


def rate_report(
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    allocation: PowerAllocation,
    proportions: Sequence[float],
    profile: OfdmaProfile | None = None,
) -> RateReport:
    profile = profile or OfdmaProfile()
    rates = per_user_rates(channel, assignment, allocation)
    capacity = total_capacity(channel, assignment, allocation)
    return RateReport(
        per_user_rate=tuple(float(r) for r in rates),
        total_capacity=capacity,
        proportionality_error=proportionality_error(rates, proportions),
        physical_total_rate=capacity * profile.bandwidth_hz,
        per_user_power=tuple(float(p) for p in allocation.per_user_total),
    )
