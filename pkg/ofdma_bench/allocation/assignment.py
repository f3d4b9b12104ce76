"""
Quota-respecting subcarrier assignment.
"""

import logging

import numpy as np

from .exceptions import InvalidInputError
from .system import AssignmentMatrix
from .system import ChannelMatrix
from .system import FloatArray
from .system import QuotaVector

logger = logging.getLogger(__name__)

EXCHANGE_MIN_GAIN = 1e-12


def _provisional_rates(channel: ChannelMatrix, total_power: float) -> FloatArray:
    """Equal-power rate estimate log2(1 + (P/N) * H) of every (user, subcarrier)."""
    power = total_power / channel.num_subcarriers
    return np.log2(1.0 + power * channel.gains)


def _greedy_owners(
    channel: ChannelMatrix,
    quotas: QuotaVector,
    utility: FloatArray,
) -> np.ndarray:
    gains = channel.gains
    owners = np.full(channel.num_subcarriers, -1, dtype=np.int64)
    remaining = np.array(quotas.counts, dtype=np.int64)
    rate_sums = np.zeros(channel.num_users)

    def take(user: int) -> None:
        # argmax returns the lowest subcarrier index among equal gains
        subcarrier = int(np.argmax(np.where(owners < 0, gains[user], -np.inf)))
        owners[subcarrier] = user
        remaining[user] -= 1
        rate_sums[user] += utility[user, subcarrier]

    for user in range(channel.num_users):
        if remaining[user] > 0:
            take(user)

    while np.any(owners < 0):
        # argmin returns the lowest user index among equal rate sums
        take(int(np.argmin(np.where(remaining > 0, rate_sums, np.inf))))

    return owners


def _exchange(owners: np.ndarray, utility: FloatArray) -> int:
    """
    Best-improvement pairwise exchange on the equal-power rate, in place.

    Swapping subcarriers m and n between their owners keeps every quota; the
    swap with the largest gain is applied until no swap gains more than
    EXCHANGE_MIN_GAIN. Returns the number of swaps made.
    """
    size = owners.size
    columns = np.arange(size)
    swaps = 0
    for _ in range(size * size):
        cross = utility[owners, :]
        own = cross[columns, columns]
        gain = np.triu(cross + cross.T - own[:, np.newaxis] - own[np.newaxis, :], k=1)
        best = int(np.argmax(gain))
        if gain.flat[best] <= EXCHANGE_MIN_GAIN:
            break
        m, n = divmod(best, size)
        owners[m], owners[n] = owners[n], owners[m]
        swaps += 1
    return swaps


def assign_subcarriers(
    channel: ChannelMatrix,
    quotas: QuotaVector,
    total_power: float = 1.0,
) -> AssignmentMatrix:
    """
    Give every subcarrier to exactly one user, honoring the quotas.

    First each user, in index order, takes its best free subcarrier. Then the
    user with the smallest provisional rate among those with quota left takes
    its best free subcarrier, until all are owned. Provisional rates assume
    the uniform power P/N. A pairwise exchange pass then improves the
    equal-power total rate without changing any quota.

    Raises:
        InvalidInputError: If the quotas do not match the channel dimensions.
    """
    if quotas.num_users != channel.num_users:
        msg = (
            f"Quotas cover {quotas.num_users} users but the channel has "
            f"{channel.num_users}"
        )
        raise InvalidInputError(msg)
    if quotas.total != channel.num_subcarriers:
        msg = (
            f"Quotas sum to {quotas.total} but the channel has "
            f"{channel.num_subcarriers} subcarriers"
        )
        raise InvalidInputError(msg)
    if total_power <= 0:
        msg = f"Total power must be positive, got {total_power}"
        raise InvalidInputError(msg)

    utility = _provisional_rates(channel, total_power)
    owners = _greedy_owners(channel, quotas, utility)
    swaps = _exchange(owners, utility)
    logger.debug(
        "Assigned %d subcarriers to %d users (%d exchanges)",
        channel.num_subcarriers,
        channel.num_users,
        swaps,
    )

    mask = np.zeros(channel.gains.shape, dtype=np.bool_)
    mask[owners, np.arange(owners.size)] = True
    return AssignmentMatrix(mask, quotas)
