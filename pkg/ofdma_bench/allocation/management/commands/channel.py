"""
Export a seeded channel grid as CSV, or run methods on an imported one.
"""

from dataclasses import replace
from pathlib import Path

from django.core.management.base import BaseCommand

from ofdma_bench.allocation.channels import generate_channel
from ofdma_bench.allocation.exceptions import AllocationError
from ofdma_bench.allocation.exceptions import InvalidInputError
from ofdma_bench.allocation.exceptions import as_command_error
from ofdma_bench.allocation.reports import read_channel_csv
from ofdma_bench.allocation.reports import render_comparison
from ofdma_bench.allocation.reports import write_channel_csv
from ofdma_bench.allocation.scenario_config import load_scenario
from ofdma_bench.allocation.services import BenchmarkService
from ofdma_bench.allocation.system import Scenario


class Command(BaseCommand):
    help = "Export or import channel matrices (one row per user, one column per subcarrier)."

    def add_arguments(self, parser):
        action = parser.add_mutually_exclusive_group(required=True)
        action.add_argument("--export", type=Path, help="Write a generated channel here")
        action.add_argument("--import", dest="import_", type=Path, help="Channel to run")
        parser.add_argument("--users", type=int, default=2)
        parser.add_argument("--subcarriers", type=int, default=64)
        parser.add_argument("--snr-db", type=float, default=50.0)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--config", type=Path, help="Scenario file for imported runs")
        parser.add_argument("--method", default="all", help="Method to run, or 'all'")
        parser.add_argument("--timing", action="store_true")

    def handle(self, *args, **options):
        try:
            if options["export"]:
                self._export(options)
            else:
                self._import(options)
        except AllocationError as e:
            raise as_command_error(e) from e

    def _export(self, options):
        channel = generate_channel(
            options["users"],
            options["subcarriers"],
            options["snr_db"],
            options["seed"],
        )
        try:
            write_channel_csv(options["export"], channel)
        except OSError as e:
            msg = f"Cannot write {options['export']}: {e.strerror}"
            raise InvalidInputError(msg) from e
        self.stdout.write(
            f"wrote {channel.num_users}x{channel.num_subcarriers} channel "
            f"to {options['export']}",
        )

    def _import(self, options):
        channel = read_channel_csv(options["import_"])
        if options["config"]:
            scenario = load_scenario(options["config"])
            if (scenario.num_users, scenario.num_subcarriers) != channel.gains.shape:
                msg = (
                    f"Scenario is {scenario.num_users}x{scenario.num_subcarriers} "
                    f"but the channel is {channel.num_users}x{channel.num_subcarriers}"
                )
                raise InvalidInputError(msg)
        else:
            scenario = Scenario(
                num_users=channel.num_users,
                num_subcarriers=channel.num_subcarriers,
            )
        service = BenchmarkService()
        scenario = replace(scenario, profile=service.profile)
        report = service.compare(
            scenario,
            channel,
            service.assign(scenario, channel),
            options["method"],
        )
        self.stdout.write(render_comparison(report, timing=options["timing"]), ending="")
