"""
Text and CSV rendering of comparisons, fixture replications and sweeps.

Every writer is deterministic: fixed column order, fixed float formats and
runtimes only when explicitly requested.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable
from pathlib import Path

import numpy as np

from .exceptions import InvalidInputError
from .genetic import ConvergenceTrace
from .services import ComparisonReport
from .services import FixtureReport
from .sweeps import SweepMean
from .sweeps import SweepRow
from .system import ChannelMatrix

SWEEP_HEADER = (
    "method",
    "users",
    "trial",
    "capacity_bps_hz",
    "prop_error",
    "runtime_us",
    "status",
)
MEANS_HEADER = (
    "method",
    "users",
    "trials",
    "mean_capacity_bps_hz",
    "stderr_capacity_bps_hz",
    "mean_prop_error",
)


def format_float(value: float, digits: int = 9) -> str:
    if math.isnan(value):
        return "nan"
    return f"{value:.{digits}f}"


def runtime_us(runtime_s: float, *, timing: bool) -> int:
    return round(runtime_s * 1e6) if timing else 0


def _write_csv(handle, header: Iterable[str], rows: Iterable[Iterable[object]]) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def write_sweep_csv(handle, rows: Iterable[SweepRow], *, timing: bool = False) -> None:
    _write_csv(
        handle,
        SWEEP_HEADER,
        (
            (
                row.method,
                row.users,
                row.trial,
                format_float(row.capacity),
                format_float(row.prop_error),
                runtime_us(row.runtime_s, timing=timing),
                row.status,
            )
            for row in rows
        ),
    )


def write_means_csv(handle, means: Iterable[SweepMean]) -> None:
    _write_csv(
        handle,
        MEANS_HEADER,
        (
            (
                mean.method,
                mean.users,
                mean.trials,
                format_float(mean.mean_capacity),
                format_float(mean.stderr_capacity),
                format_float(mean.mean_prop_error),
            )
            for mean in means
        ),
    )


def render_comparison(report: ComparisonReport, *, timing: bool = False) -> str:
    """Fixed-width method table, one line per method plus per-user detail."""
    scenario = report.scenario
    out = io.StringIO()
    out.write(
        f"users={scenario.num_users} subcarriers={scenario.num_subcarriers} "
        f"total_power_w={scenario.total_power:g} seed={scenario.seed}\n",
    )
    out.write(
        "quotas="
        + ",".join(str(c) for c in report.assignment.quotas.counts)
        + " proportions="
        + ",".join(format_float(g, 6) for g in scenario.proportions)
        + "\n",
    )
    out.write(
        f"{'method':<12}{'capacity_bps_hz':>18}{'prop_error':>14}"
        f"{'rate_bps':>18}{'runtime_us':>12}  status\n",
    )
    for row in report.rows:
        if row.succeeded:
            capacity = format_float(row.report.total_capacity, 6)
            prop = format_float(row.report.proportionality_error, 9)
            physical = f"{row.report.physical_total_rate:.6e}"
        else:
            capacity = prop = physical = "nan"
        out.write(
            f"{row.method:<12}{capacity:>18}{prop:>14}{physical:>18}"
            f"{runtime_us(row.runtime_s, timing=timing):>12}  {row.status}\n",
        )
    for row in report.rows:
        if not row.succeeded:
            out.write(f"{row.method}: {row.error}\n")
            continue
        for user, (rate, power) in enumerate(
            zip(row.report.per_user_rate, row.report.per_user_power, strict=True),
        ):
            out.write(
                f"{row.method} user {user + 1}: power_w={format_float(power, 6)} "
                f"rate={format_float(rate, 6)}\n",
            )
    return out.getvalue()


def render_fixture(report: FixtureReport, *, timing: bool = False) -> str:
    """Comparison table followed by printed-versus-reproduced cells."""
    out = io.StringIO()
    out.write(f"fixture {report.fixture.name}\n")
    out.write(render_comparison(report.comparison, timing=timing))
    out.write(
        f"{'method':<18}{'quantity':<28}{'printed':>12}{'reproduced':>14}"
        f"{'tolerance':>12}  flag\n",
    )
    for cell in report.cells:
        flag = "reproduced" if cell.ok else "not-reproduced"
        line = (
            f"{cell.method:<18}{cell.quantity:<28}{cell.printed:>12.6g}"
            f"{cell.reproduced:>14.6g}{cell.tolerance:>12}  {flag}"
        )
        if cell.note:
            line += f" ({cell.note})"
        out.write(line + "\n")
    return out.getvalue()


def write_channel_csv(path: Path, channel: ChannelMatrix) -> None:
    """One row per user, one column per subcarrier, shortest round-trip floats."""
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerows([repr(float(g)) for g in row] for row in channel.gains)


def read_channel_csv(path: Path) -> ChannelMatrix:
    """
    Read a channel grid written by write_channel_csv (or any rectangular CSV).

    Raises:
        InvalidInputError: If the file is missing, ragged or not numeric.
    """
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            rows = [row for row in csv.reader(handle) if row]
    except OSError as e:
        msg = f"Cannot read channel file {path}: {e.strerror}"
        raise InvalidInputError(msg) from e
    if not rows:
        msg = f"Channel file {path} is empty"
        raise InvalidInputError(msg)
    if len({len(row) for row in rows}) != 1:
        msg = f"Channel file {path} has rows of different lengths"
        raise InvalidInputError(msg)
    try:
        gains = np.array([[float(value) for value in row] for row in rows])
    except ValueError as e:
        msg = f"Channel file {path} holds a non-numeric value: {e}"
        raise InvalidInputError(msg) from e
    return ChannelMatrix(gains)


def render_trace(trace: ConvergenceTrace) -> str:
    """Per-generation GA trace: best-so-far and raw generation-best fitness."""
    out = io.StringIO()
    out.write("generation,best_fitness,best_capacity,generation_best_fitness,user_capacities\n")
    for record in trace.records:
        users = ";".join(format_float(c, 6) for c in record.user_capacities)
        out.write(
            f"{record.generation},{format_float(record.best_fitness)},"
            f"{format_float(record.best_capacity)},"
            f"{format_float(record.generation_best_fitness)},{users}\n",
        )
    return out.getvalue()
