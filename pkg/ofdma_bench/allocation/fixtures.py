"""
Channel/assignment fixtures transcribed from the published desk experiments.

Each fixture reproduces a printed table: the H grid, the printed subcarrier
allocation matrix and the experiment's scenario. Printed H grids show zeros
off-assignment, so fixtures skip the assignment stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field

import numpy as np

from .exceptions import FixtureNotFoundError
from .system import AssignmentMatrix
from .system import ChannelMatrix
from .system import Scenario


TABLE4 = "table4"
TABLE5 = "table5"
TABLE6 = "table6"
FIXTURE_NAMES = (TABLE4, TABLE5, TABLE6)


@dataclass(frozen=True)
class PrintedValues:
    """Values printed alongside a fixture, keyed by method."""

    # method -> per-user power totals (W)
    user_powers: dict[str, tuple[float, ...]] = field(default_factory=dict)
    # method -> per-subcarrier powers of the assigned subcarriers, in order
    subcarrier_powers: dict[str, tuple[float, ...]] = field(default_factory=dict)
    # method -> per-user rates
    user_rates: dict[str, tuple[float, ...]] = field(default_factory=dict)
    # method -> normalized total capacity (bit/s/Hz)
    capacity: dict[str, float] = field(default_factory=dict)
    # method -> {group label: capacity}
    group_capacity: dict[str, dict[str, float]] = field(default_factory=dict)
    # symbol -> printed value for unhoused intermediates (V, W, A, B)
    intermediates: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class PublishedFixture:
    name: str
    channel: ChannelMatrix
    assignment: AssignmentMatrix
    scenario: Scenario
    printed: PrintedValues


# Two printed H rows; every column carries exactly one nonzero value.
_TABLE5_GAINS = np.array(
    [
        [189.0, 265.0, 0.0, 0.0, 0.0, 46.0, 0.0, 87.0],
        [0.0, 0.0, 301.0, 363.0, 288.0, 0.0, 230.0, 0.0],
    ],
)
_TABLE5_OWNERS = (0, 0, 1, 1, 1, 0, 1, 0)
_TABLE6_OWNERS = (0, 1, 1, 3, 3, 2, 2, 0)


def _mean_snr_db(gains: np.ndarray) -> float:
    return float(10.0 * np.log10(gains[gains > 0].mean()))


def _restricted(column_gains: np.ndarray, owners: tuple[int, ...], num_users: int):
    """Place each column's printed gain on its owner's row, zero elsewhere."""
    assignment = AssignmentMatrix.from_owners(owners, num_users)
    gains = np.where(assignment.mask, column_gains[np.newaxis, :], 0.0)
    return ChannelMatrix(gains), assignment


def _table4() -> PublishedFixture:
    # One SNR vector {10, 8, 9, 7} shared by both users.
    row = np.array([10.0, 8.0, 9.0, 7.0])
    gains = np.vstack([row, row])
    assignment = AssignmentMatrix.from_owners((0, 0, 0, 1), num_users=2)
    channel = ChannelMatrix(gains)
    scenario = Scenario(
        num_users=2,
        num_subcarriers=4,
        total_power=10.0,
        proportions=(0.75, 0.25),
        mean_snr_db=_mean_snr_db(gains),
        method="linear",
    )
    printed = PrintedValues(
        user_powers={"linear": (7.66, 2.34)},
        subcarrier_powers={"linear": (2.58, 2.55, 2.53, 2.34)},
        user_rates={"linear": (13.39008, 4.46336)},
        intermediates={
            "V_1": -0.068,
            "V_2": -0.011,
            "W_1": 0.83,
            "W_2": 0.9,
            "A_2,2": -2.93,
            "B_1": 0.0,
            "B_2": 0.1632,
        },
    )
    return PublishedFixture(TABLE4, channel, assignment, scenario, printed)


def _table5() -> PublishedFixture:
    assignment = AssignmentMatrix.from_owners(_TABLE5_OWNERS, num_users=2)
    channel = ChannelMatrix(_TABLE5_GAINS)
    scenario = Scenario(
        num_users=2,
        num_subcarriers=8,
        total_power=1.0,
        proportions=(0.5, 0.5),
        mean_snr_db=_mean_snr_db(_TABLE5_GAINS),
    )
    printed = PrintedValues(
        user_powers={"linear": (0.2929, 0.7071), "active_set": (0.5, 0.5)},
        capacity={"linear": 4.65, "active_set": 4.85},
    )
    return PublishedFixture(TABLE5, channel, assignment, scenario, printed)


def _table6() -> PublishedFixture:
    # Only the user 1/2 H rows are printed. Users 3 and 4 reuse the single
    # nonzero printed value of each column they own.
    column_gains = _TABLE5_GAINS.sum(axis=0)
    channel, assignment = _restricted(column_gains, _TABLE6_OWNERS, num_users=4)
    scenario = Scenario(
        num_users=4,
        num_subcarriers=8,
        total_power=1.0,
        mean_snr_db=_mean_snr_db(channel.gains),
    )
    printed = PrintedValues(
        user_powers={
            "linear": (0.356, 0.382, 0.1903, 0.071),
            "active_set": (0.25, 0.25, 0.25, 0.25),
        },
        group_capacity={
            "linear": {"1&2": 4.2463, "3&4": 3.3577},
            "active_set": {"1&2": 4.4274, "3&4": 3.839},
        },
    )
    return PublishedFixture(TABLE6, channel, assignment, scenario, printed)


_BUILDERS = {
    TABLE4: _table4,
    TABLE5: _table5,
    TABLE6: _table6,
}


def load_fixture(name: str) -> PublishedFixture:
    """Return the full fixture, including the printed reference values."""
    try:
        builder = _BUILDERS[name]
    except KeyError as e:
        msg = f"Unknown fixture '{name}'. Known fixtures: {', '.join(FIXTURE_NAMES)}"
        raise FixtureNotFoundError(msg) from e
    return builder()


def channel_from_fixture(name: str) -> tuple[ChannelMatrix, AssignmentMatrix, Scenario]:
    """
    Return the printed channel, assignment and scenario of a fixture.

    Raises:
        FixtureNotFoundError: If the name is not a known fixture.
    """
    fixture = load_fixture(name)
    return fixture.channel, fixture.assignment, fixture.scenario
