"""
Business logic layer: run allocation methods and compare them.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from collections.abc import Iterable
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace

from django.conf import settings

from .activeset import activeset_power_split
from .assignment import assign_subcarriers
from .channels import generate_channel
from .exceptions import AllocationError
from .exceptions import InvalidInputError
from .exceptions import MethodInapplicableError
from .fixtures import PublishedFixture
from .fixtures import load_fixture
from .genetic import ConvergenceTrace
from .genetic import ga_power_split
from .linear import linear_power_split
from .metrics import RateReport
from .metrics import group_capacity
from .metrics import rate_report
from .rootfind import rootfind_power_split
from .system import ACTIVE_SET
from .system import GA
from .system import LINEAR
from .system import METHODS
from .system import ROOTFIND
from .system import AssignmentMatrix
from .system import ChannelMatrix
from .system import OfdmaProfile
from .system import PowerAllocation
from .system import Scenario
from .waterfilling import compute_vw

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_FALLBACK = "rootfind_fallback"

# Documented tolerances for fixture replication cells.
RATE_RATIO_TOLERANCE = 1e-6
RATE_RELATIVE_TOLERANCE = 0.005
POWER_TOLERANCE = 0.01
SHARE_TOLERANCE = 0.02
CAPACITY_RELATIVE_TOLERANCE = 0.10


@dataclass(frozen=True)
class MethodResult:
    """One row of a comparison report."""

    method: str
    status: str
    report: RateReport | None = None
    allocation: PowerAllocation | None = None
    runtime_s: float = 0.0
    error: str = ""
    trace: ConvergenceTrace | None = None

    @property
    def succeeded(self) -> bool:
        return self.report is not None


@dataclass(frozen=True)
class ComparisonReport:
    scenario: Scenario
    channel: ChannelMatrix
    assignment: AssignmentMatrix
    rows: list[MethodResult] = field(default_factory=list)

    def row(self, method: str) -> MethodResult:
        for result in self.rows:
            if result.method == method:
                return result
        msg = f"No row for method {method}"
        raise KeyError(msg)


def parse_methods(methods: str | Iterable[str] | None) -> list[str]:
    """
    Normalize a method selection to report order.

    Accepts None or "all" for every method, a comma-separated string, or an
    iterable of names.
    """
    if methods is None or methods == "all":
        return list(METHODS)
    names = methods.split(",") if isinstance(methods, str) else list(methods)
    chosen = {name.strip() for name in names if name.strip()}
    unknown = chosen - set(METHODS)
    if unknown or not chosen:
        msg = (
            f"Unknown methods: {sorted(unknown) or names}. "
            f"Valid methods are: {', '.join(METHODS)}, all"
        )
        raise InvalidInputError(msg)
    return [m for m in METHODS if m in chosen]


def _solver(
    method: str,
    scenario: Scenario,
    ga_workers: int,
) -> Callable[..., tuple[PowerAllocation, ConvergenceTrace | None]]:
    def linear(channel, assignment):
        return linear_power_split(
            channel, assignment, scenario.proportions, scenario.total_power,
        ), None

    def rootfind(channel, assignment):
        return rootfind_power_split(
            channel, assignment, scenario.proportions, scenario.total_power,
        ), None

    def active_set(channel, assignment):
        return activeset_power_split(
            channel, assignment, scenario.proportions, scenario.total_power,
        ), None

    def ga(channel, assignment):
        return ga_power_split(
            channel,
            assignment,
            scenario.proportions,
            scenario.total_power,
            params=scenario.ga_params,
            seed=scenario.seed,
            workers=ga_workers,
        )

    return {
        LINEAR: linear,
        ROOTFIND: rootfind,
        ACTIVE_SET: active_set,
        GA: ga,
    }[method]


def _run_method(  # noqa: PLR0913
    method: str,
    scenario: Scenario,
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    *,
    linear_fallback: bool,
    ga_workers: int,
) -> MethodResult:
    status = STATUS_OK
    start = time.perf_counter()
    try:
        try:
            allocation, trace = _solver(method, scenario, ga_workers)(channel, assignment)
        except MethodInapplicableError as e:
            if not linear_fallback:
                raise
            logger.warning("Linear method inapplicable, using rootfind: %s", e.message)
            status = STATUS_FALLBACK
            allocation, trace = _solver(ROOTFIND, scenario, ga_workers)(
                channel,
                assignment,
            )
        runtime = time.perf_counter() - start
        report = rate_report(
            channel,
            assignment,
            allocation,
            scenario.proportions,
            scenario.profile,
        )
    except AllocationError as e:
        logger.warning("Method %s failed: %s", method, e.message)
        return MethodResult(
            method=method,
            status=f"error:{type(e).__name__}",
            runtime_s=time.perf_counter() - start,
            error=e.message,
        )
    return MethodResult(
        method=method,
        status=status,
        report=report,
        allocation=allocation,
        runtime_s=runtime,
        trace=trace,
    )


def compare_methods(  # noqa: PLR0913
    scenario: Scenario,
    channel: ChannelMatrix,
    assignment: AssignmentMatrix,
    methods: str | Iterable[str] | None = None,
    *,
    linear_fallback: bool = True,
    ga_workers: int = 1,
) -> ComparisonReport:
    """
    Run the selected methods on identical inputs.

    Rows come in the order linear, rootfind, active_set, ga. A failing
    method yields an error row and never stops the others.
    """
    rows = [
        _run_method(
            method,
            scenario,
            channel,
            assignment,
            linear_fallback=linear_fallback,
            ga_workers=ga_workers,
        )
        for method in parse_methods(methods)
    ]
    return ComparisonReport(scenario, channel, assignment, rows)


@dataclass(frozen=True)
class ReplicationCell:
    """A printed value next to its reproduction."""

    method: str
    quantity: str
    printed: float
    reproduced: float
    tolerance: str
    ok: bool
    note: str = ""


@dataclass(frozen=True)
class FixtureReport:
    fixture: PublishedFixture
    comparison: ComparisonReport
    cells: list[ReplicationCell]


def _absolute(  # noqa: PLR0913
    method: str,
    quantity: str,
    printed: float,
    value: float,
    tolerance: float,
    note: str = "",
) -> ReplicationCell:
    return ReplicationCell(
        method,
        quantity,
        printed,
        value,
        f"±{tolerance:g}",
        abs(value - printed) <= tolerance,
        note,
    )


def _relative(  # noqa: PLR0913
    method: str,
    quantity: str,
    printed: float,
    value: float,
    tolerance: float,
    note: str = "",
) -> ReplicationCell:
    return ReplicationCell(
        method,
        quantity,
        printed,
        value,
        f"±{tolerance:.1%}",
        abs(value - printed) <= tolerance * abs(printed),
        note,
    )


_POWER_NOTE = "printed powers contradict the printed rates"
_LINEAR_SPLIT_NOTE = "printed linear split is not reproducible by any described method"
_INTERMEDIATE_NOTE = "symbol printed without definition"
_RECONSTRUCTED_NOTE = "users 3-4 gains reconstructed; informational"


def _table4_cells(fixture: PublishedFixture, comparison: ComparisonReport):
    values = fixture.printed
    cells = []
    for result in comparison.rows:
        if result.method not in (LINEAR, ROOTFIND) or not result.succeeded:
            continue
        rates = result.report.per_user_rate
        cells.append(
            _absolute(result.method, "rate ratio R1/R2", 3.0, rates[0] / rates[1],
                      RATE_RATIO_TOLERANCE),
        )
        for user, printed in enumerate(values.user_rates["linear"]):
            cells.append(
                _relative(result.method, f"rate user {user + 1}", printed, rates[user],
                          RATE_RELATIVE_TOLERANCE),
            )
        for user, printed in enumerate(values.user_powers["linear"]):
            cells.append(
                _absolute(result.method, f"power user {user + 1} (W)", printed,
                          result.report.per_user_power[user], POWER_TOLERANCE,
                          _POWER_NOTE),
            )
    return cells


def _share_cells(method: str, printed: tuple[float, ...], result: MethodResult, note=""):
    shares = result.allocation.shares
    return [
        _absolute(method, f"power share user {user + 1}", value, float(shares[user]),
                  SHARE_TOLERANCE, note)
        for user, value in enumerate(printed)
    ]


def _table5_cells(fixture: PublishedFixture, comparison: ComparisonReport):
    values = fixture.printed
    cells = []
    capacities = {}
    for result in comparison.rows:
        if result.method not in values.capacity or not result.succeeded:
            continue
        note = _LINEAR_SPLIT_NOTE if result.method == LINEAR else ""
        cells.extend(_share_cells(result.method, values.user_powers[result.method], result, note))
        capacity = result.report.total_capacity
        capacities[result.method] = capacity
        cells.append(
            _relative(result.method, "capacity (bit/s/Hz)", values.capacity[result.method],
                      capacity, CAPACITY_RELATIVE_TOLERANCE),
        )
    if {LINEAR, ACTIVE_SET} <= capacities.keys():
        gap = capacities[ACTIVE_SET] - capacities[LINEAR]
        printed_gap = values.capacity[ACTIVE_SET] - values.capacity[LINEAR]
        cells.append(
            ReplicationCell(
                "active_set-linear",
                "capacity gain over linear",
                printed_gap,
                gap,
                "> 0",
                gap > 0,
            ),
        )
    return cells


def _table6_cells(fixture: PublishedFixture, comparison: ComparisonReport):
    values = fixture.printed
    cells = []
    for result in comparison.rows:
        if result.method not in values.user_powers or not result.succeeded:
            continue
        note = _LINEAR_SPLIT_NOTE if result.method == LINEAR else ""
        cells.extend(_share_cells(result.method, values.user_powers[result.method], result, note))
        groups = {"1&2": (0, 1), "3&4": (2, 3)}
        for label, printed in values.group_capacity[result.method].items():
            value = group_capacity(
                comparison.channel,
                comparison.assignment,
                result.allocation,
                groups[label],
            )
            cells.append(
                _relative(result.method, f"capacity users {label}", printed, value,
                          CAPACITY_RELATIVE_TOLERANCE,
                          _RECONSTRUCTED_NOTE if label == "3&4" else ""),
            )
    return cells


def _intermediate_cells(fixture: PublishedFixture):
    printed = fixture.printed.intermediates
    if not printed:
        return []
    summaries = [
        compute_vw(fixture.assignment.user_gains(fixture.channel, user))
        for user in range(fixture.assignment.num_users)
    ]
    cells = []
    for user, summary in enumerate(summaries):
        for symbol, value in (("V", summary.offset), ("W", summary.gain_ratio)):
            key = f"{symbol}_{user + 1}"
            if key in printed:
                cells.append(
                    _absolute("-", key, printed[key], value, 1e-3, _INTERMEDIATE_NOTE),
                )
    return cells


_CELL_BUILDERS = {
    "table4": _table4_cells,
    "table5": _table5_cells,
    "table6": _table6_cells,
}


class BenchmarkService:
    """Service class for running scenarios, fixtures and comparisons."""

    def __init__(self):
        """Read worker counts and the PHY profile from OFDMA_BENCH_CONFIG."""
        config = getattr(settings, "OFDMA_BENCH_CONFIG", {})
        self.ga_workers = int(config.get("GA_WORKERS", 1))
        self.sweep_workers = int(config.get("SWEEP_WORKERS", 1))
        if self.ga_workers < 1 or self.sweep_workers < 1:
            msg = "OFDMA_BENCH_CONFIG worker counts must be positive"
            raise InvalidInputError(msg)
        self.profile = OfdmaProfile.from_settings()

    def compare(
        self,
        scenario: Scenario,
        channel: ChannelMatrix,
        assignment: AssignmentMatrix,
        methods: str | Iterable[str] | None = None,
    ) -> ComparisonReport:
        """Run methods with the configured PHY profile and GA worker count."""
        return compare_methods(
            replace(scenario, profile=self.profile),
            channel,
            assignment,
            methods,
            ga_workers=self.ga_workers,
        )

    def assign(self, scenario: Scenario, channel: ChannelMatrix) -> AssignmentMatrix:
        return assign_subcarriers(channel, scenario.quotas(), scenario.total_power)

    def run_scenario(
        self,
        scenario: Scenario,
        methods: str | Iterable[str] | None = None,
    ) -> ComparisonReport:
        """Generate the scenario's channel, assign subcarriers and run methods."""
        logger.info(
            "Running scenario K=%d N=%d P=%g W at %.1f dB (seed %d)",
            scenario.num_users,
            scenario.num_subcarriers,
            scenario.total_power,
            scenario.mean_snr_db,
            scenario.seed,
        )
        channel = generate_channel(
            scenario.num_users,
            scenario.num_subcarriers,
            scenario.mean_snr_db,
            scenario.seed,
        )
        return self.compare(scenario, channel, self.assign(scenario, channel), methods)

    def run_fixture(
        self,
        name: str,
        methods: str | Iterable[str] | None = None,
    ) -> FixtureReport:
        """Run methods on a printed fixture and line results up with the print."""
        fixture = load_fixture(name)
        logger.info("Replicating fixture %s", fixture.name)
        comparison = self.compare(
            fixture.scenario,
            fixture.channel,
            fixture.assignment,
            methods,
        )
        cells = _CELL_BUILDERS[fixture.name](fixture, comparison)
        cells.extend(_intermediate_cells(fixture))
        return FixtureReport(fixture, comparison, cells)
