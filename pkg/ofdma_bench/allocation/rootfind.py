"""
Root-finding baseline: exact proportional rates for arbitrary quotas.

The outer unknown is user 1's power P_1. Every other user's power follows
from inverting its (strictly increasing) water-filled rate at the target
R_k = gamma_k / gamma_1 * R_1(P_1); P_1 is then chosen so the powers exhaust
the budget.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from .exceptions import InvalidInputError
from .exceptions import NumericalFailureError
from .roots import bisection
from .roots import safeguarded_newton
from .system import AssignmentMatrix
from .system import ChannelMatrix
from .system import FloatArray
from .system import PowerAllocation
from .system import check_dimensions
from .system import normalize_proportions
from .waterfilling import waterfill_user
from .waterfilling import waterfilled_rate

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-12
INVERSION_TOLERANCE = 1e-13
DIFFERENCE_STEP = 1e-6
MAX_BRACKET_DOUBLINGS = 200

STRATEGY_NEWTON = "newton"
STRATEGY_BISECTION = "bisection"


def _invert_rate(gains: FloatArray, target: float, scale: float) -> float:
    """Budget whose water-filled rate over gains equals target."""
    if target <= 0:
        return 0.0
    hi = scale
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if waterfilled_rate(gains, hi)[0] >= target:
            break
        hi *= 2.0
    else:
        msg = f"Cannot reach rate {target:.6g} with any finite power"
        raise NumericalFailureError(msg, bracket=(0.0, hi))

    def shortfall(budget: float) -> tuple[float, float]:
        rate, slope = waterfilled_rate(gains, budget)
        return rate - target, slope

    return safeguarded_newton(
        shortfall,
        0.0,
        hi,
        ftol=INVERSION_TOLERANCE * target,
    ).root


def _user_totals(
    first_power: float,
    user_gains: list[FloatArray],
    gammas: Sequence[float],
    total_power: float,
) -> FloatArray:
    first_rate, _ = waterfilled_rate(user_gains[0], first_power)
    totals = np.empty(len(user_gains))
    totals[0] = first_power
    for user in range(1, len(user_gains)):
        target = gammas[user] / gammas[0] * first_rate
        totals[user] = _invert_rate(user_gains[user], target, total_power)
    return totals


def _prepare(channel, assignment, proportions):
    check_dimensions(channel, assignment)
    gammas = normalize_proportions(proportions)
    if len(gammas) != assignment.num_users:
        msg = f"{len(gammas)} proportions for {assignment.num_users} users"
        raise InvalidInputError(msg)
    user_gains = [assignment.user_gains(channel, k) for k in range(assignment.num_users)]
    return gammas, user_gains


def proportionality_residual(
    first_power: float,
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    proportions: Sequence[float],
    total_power: float,
) -> float:
    """
    Budget mismatch sum_k P_k - P_total implied by a trial P_1.

    Args:
        first_power: Trial power of user 1, in [0, total_power]
        channel: Effective SNR grid
        assignment: Subcarrier ownership
        proportions: Target rate proportions
        total_power: Power budget (W)
    """
    if not 0.0 <= first_power <= total_power:
        msg = f"Trial power {first_power} outside [0, {total_power}]"
        raise InvalidInputError(msg)
    gammas, user_gains = _prepare(channel, assignment, proportions)
    totals = _user_totals(first_power, user_gains, gammas, total_power)
    return float(totals.sum() - total_power)


def rootfind_power_split(  # noqa: PLR0913
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    proportions: Sequence[float],
    total_power: float,
    *,
    strategy: str = STRATEGY_NEWTON,
) -> PowerAllocation:
    """
    Proportional-rate power split by scalar root finding on P_1.

    The default strategy is Newton with a central finite-difference slope
    (step 1e-6 * P_total), safeguarded by bisection on [0, P_total];
    ``strategy="bisection"`` uses bisection alone.

    Raises:
        NumericalFailureError: If the residual is not bracketed or an
            inner rate inversion fails.
    """
    gammas, user_gains = _prepare(channel, assignment, proportions)
    if total_power <= 0:
        msg = f"Total power must be positive, got {total_power}"
        raise InvalidInputError(msg)

    def residual(first_power: float) -> float:
        totals = _user_totals(first_power, user_gains, gammas, total_power)
        return float(totals.sum() - total_power)

    if assignment.num_users == 1:
        first_power = total_power
    elif strategy == STRATEGY_BISECTION:
        first_power = bisection(
            residual,
            0.0,
            total_power,
            xtol=RESIDUAL_TOLERANCE * total_power,
        ).root
    elif strategy == STRATEGY_NEWTON:
        step = DIFFERENCE_STEP * total_power

        def residual_and_slope(first_power: float) -> tuple[float, float]:
            left = max(first_power - step, 0.0)
            right = min(first_power + step, total_power)
            slope = (residual(right) - residual(left)) / (right - left)
            return residual(first_power), slope

        result = safeguarded_newton(
            residual_and_slope,
            0.0,
            total_power,
            ftol=RESIDUAL_TOLERANCE * total_power,
        )
        logger.debug("Root-finding converged in %d iterations", result.iterations)
        first_power = result.root
    else:
        msg = f"Unknown root-finding strategy: {strategy}"
        raise InvalidInputError(msg)

    totals = _user_totals(first_power, user_gains, gammas, total_power)
    # user 1 absorbs the sub-tolerance residual so the budget is met exactly
    totals[0] = max(total_power - totals[1:].sum(), 0.0)
    powers = [waterfill_user(user_gains[k], float(totals[k])) for k in range(len(totals))]
    return PowerAllocation.from_user_powers(assignment, powers)
