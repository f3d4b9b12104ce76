"""
Seeded Rayleigh block-fading channel generator.
"""

import logging

import numpy as np

from .exceptions import InvalidInputError
from .system import MAX_SEED
from .system import ChannelMatrix

logger = logging.getLogger(__name__)


def db_to_linear(value_db: float) -> float:
    return float(10.0 ** (value_db / 10.0))


def make_generator(seed: int) -> np.random.Generator:
    """PCG64 generator seeded with a 64-bit unsigned integer."""
    if not 0 <= seed <= MAX_SEED:
        msg = f"Seed must be a 64-bit unsigned integer, got {seed}"
        raise InvalidInputError(msg)
    return np.random.Generator(np.random.PCG64(seed))


def generate_channel(
    num_users: int,
    num_subcarriers: int,
    mean_snr_db: float,
    seed: int,
) -> ChannelMatrix:
    """
    Draw a K x N channel of independent exponential SNRs.

    The squared magnitude of a Rayleigh-faded gain is exponential; entries are
    drawn with mean 10^(mean_snr_db / 10) in row-major (user, then subcarrier)
    order from a fresh PCG64 stream, so the matrix depends on the arguments
    only.

    Args:
        num_users: Number of users K
        num_subcarriers: Number of subcarriers N
        mean_snr_db: Mean subchannel SNR per watt, in dB
        seed: 64-bit unsigned seed

    Returns:
        ChannelMatrix with strictly positive entries
    """
    if num_users < 1 or num_subcarriers < 1:
        msg = f"Channel needs K >= 1 and N >= 1, got K={num_users}, N={num_subcarriers}"
        raise InvalidInputError(msg)
    if not np.isfinite(mean_snr_db):
        msg = "Mean SNR must be finite"
        raise InvalidInputError(msg)

    rng = make_generator(seed)
    mean = db_to_linear(mean_snr_db)
    gains = rng.exponential(scale=mean, size=(num_users, num_subcarriers))
    # Exponential draws are > 0 with probability one; guard the float corner.
    gains = np.maximum(gains, np.finfo(np.float64).tiny)
    logger.debug(
        "Generated %dx%d channel at %.1f dB (seed %d)",
        num_users,
        num_subcarriers,
        mean_snr_db,
        seed,
    )
    return ChannelMatrix(gains)
