"""
Linear approach: per-user water-filling plus a cross-user linear system.

When every user's subcarrier count is proportional to its rate proportion
(N_k / gamma_k constant), the proportional-rate conditions

    R_k / gamma_k = R_1 / gamma_1,  R_k = N_k * log2(W_k * (1 + a_k * (P_k - V_k)))

with a_k = H_k,(1) / N_k reduce to W_k * (1 + a_k * (P_k - V_k)) being equal
across users, which is linear in the per-user totals P_k.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from .exceptions import MethodInapplicableError
from .exceptions import NumericalFailureError
from .system import AssignmentMatrix
from .system import ChannelMatrix
from .system import PowerAllocation
from .system import check_dimensions
from .system import normalize_proportions
from .waterfilling import UserWaterfillSummary
from .waterfilling import compute_vw
from .waterfilling import waterfill_user

logger = logging.getLogger(__name__)

LINEAR_CASE_TOLERANCE = 1e-9


def is_linear_case(assignment: AssignmentMatrix, proportions: Sequence[float]) -> bool:
    """True when N_k / gamma_k is the same for every user."""
    ratios = np.asarray(assignment.quotas.counts, dtype=np.float64) / np.asarray(
        proportions,
    )
    return bool(np.all(np.abs(ratios - ratios[0]) <= LINEAR_CASE_TOLERANCE * ratios[0]))


def _solve_totals(
    summaries: list[UserWaterfillSummary],
    slopes: np.ndarray,
    free: list[int],
    total_power: float,
) -> np.ndarray:
    """Solve the equal-level rows plus the budget row over the free users."""
    size = len(free)
    matrix = np.zeros((size, size))
    rhs = np.zeros(size)
    ref = free[0]
    ref_w = summaries[ref].gain_ratio
    ref_a = slopes[ref]
    for row, user in enumerate(free[1:]):
        w = summaries[user].gain_ratio
        a = slopes[user]
        matrix[row, row + 1] = w * a
        matrix[row, 0] = -ref_w * ref_a
        rhs[row] = ref_w * (1.0 - ref_a * summaries[ref].offset) - w * (
            1.0 - a * summaries[user].offset
        )
    matrix[size - 1, :] = 1.0
    rhs[size - 1] = total_power
    try:
        return np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError as e:
        msg = f"Linear power system is singular: {e}"
        raise NumericalFailureError(msg) from e


def linear_power_split(
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    proportions: Sequence[float],
    total_power: float,
) -> PowerAllocation:
    """
    Proportional-rate power split for the linear case.

    Users whose solved total comes out negative are clamped to zero power and
    dropped from the system, which is then re-solved over the rest. The
    split is exact only while every remaining user powers all of its
    subcarriers (P_k >= V_k).

    Raises:
        MethodInapplicableError: If N_k / gamma_k differs across users, or if
            some user's total falls below its offset V_k.
        NumericalFailureError: If the linear system is singular.
    """
    check_dimensions(channel, assignment)
    gammas = normalize_proportions(proportions)
    if not is_linear_case(assignment, gammas):
        msg = (
            f"Quotas {assignment.quotas.counts} are not proportional to "
            f"{tuple(round(g, 6) for g in gammas)}; use rootfind"
        )
        raise MethodInapplicableError(msg)

    num_users = assignment.num_users
    user_gains = [assignment.user_gains(channel, k) for k in range(num_users)]
    summaries = [compute_vw(g) for g in user_gains]
    slopes = np.array(
        [g.min() / g.size for g in user_gains],
    )

    totals = np.zeros(num_users)
    free = list(range(num_users))
    while True:
        solved = _solve_totals(summaries, slopes, free, total_power)
        negative = [user for user, value in zip(free, solved, strict=True) if value < 0]
        if not negative:
            totals[free] = solved
            break
        logger.debug("Clamping users %s to zero power", negative)
        free = [user for user in free if user not in negative]

    slack = LINEAR_CASE_TOLERANCE * total_power
    partial = [user for user in free if totals[user] < summaries[user].offset - slack]
    if partial:
        msg = (
            f"Users {[user + 1 for user in partial]} cannot power every assigned "
            "subcarrier at the linear solution; use rootfind"
        )
        raise MethodInapplicableError(msg)
    powers = [waterfill_user(user_gains[k], float(totals[k])) for k in range(num_users)]
    return PowerAllocation.from_user_powers(assignment, powers)
