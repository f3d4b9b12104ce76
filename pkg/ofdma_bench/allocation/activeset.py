"""
Active-set method: capacity-maximizing water-filling over the pooled
subcarriers of all users.

Proportional fairness enters only through the subcarrier quotas; per-user
power totals are whatever the pooled water level produces.
"""

import logging
from collections.abc import Sequence

import numpy as np

from .system import AssignmentMatrix
from .system import ChannelMatrix
from .system import FloatArray
from .system import PowerAllocation
from .system import check_dimensions
from .waterfilling import fill

logger = logging.getLogger(__name__)


def global_waterfill(assigned_gains, total_power: float) -> FloatArray:
    """
    Water-fill the whole budget over every owned subcarrier at once.

    This is the unique maximizer of sum_n log2(1 + p_n * H_n) subject to
    sum_n p_n = P_total and p_n >= 0.

    Raises:
        InvalidInputError: If the subcarrier set is empty or a gain is not positive.
    """
    result = fill(assigned_gains, total_power)
    logger.debug(
        "Active set holds %d of %d subcarriers at level %.6g",
        int(result.active.sum()),
        result.active.size,
        result.water_level,
    )
    return result.powers


def activeset_power_split(
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    proportions: Sequence[float],
    total_power: float,
) -> PowerAllocation:
    """Pooled water-filling folded back onto the K x N grid by ownership."""
    check_dimensions(channel, assignment)
    del proportions  # fairness is carried by the quotas alone
    owners = assignment.owners
    columns = np.arange(assignment.num_subcarriers)
    pooled = channel.gains[owners, columns]
    grid = np.zeros(channel.gains.shape)
    grid[owners, columns] = global_waterfill(pooled, total_power)
    return PowerAllocation(grid)
