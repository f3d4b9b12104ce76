"""
Run one scenario document through the allocation methods.
"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand

from ofdma_bench.allocation.exceptions import AllocationError
from ofdma_bench.allocation.exceptions import as_command_error
from ofdma_bench.allocation.reports import render_comparison
from ofdma_bench.allocation.reports import render_trace
from ofdma_bench.allocation.scenario_config import load_scenario
from ofdma_bench.allocation.services import BenchmarkService
from ofdma_bench.allocation.system import GA

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Generate the scenario's channel, assign subcarriers and allocate power."

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, type=Path, help="Scenario file")
        parser.add_argument(
            "--method",
            help="Method to run (default: the scenario's method), or 'all'",
        )
        parser.add_argument(
            "--timing",
            action="store_true",
            help="Report wall-clock runtimes (output is no longer reproducible)",
        )
        parser.add_argument(
            "--trace",
            action="store_true",
            help="Also print the GA convergence trace",
        )

    def handle(self, *args, **options):
        try:
            scenario = load_scenario(options["config"])
            service = BenchmarkService()
            report = service.run_scenario(scenario, options["method"] or scenario.method)
        except AllocationError as e:
            raise as_command_error(e) from e

        self.stdout.write(render_comparison(report, timing=options["timing"]), ending="")
        if options["trace"]:
            ga_rows = [row for row in report.rows if row.method == GA and row.trace]
            for row in ga_rows:
                self.stdout.write(render_trace(row.trace), ending="")
